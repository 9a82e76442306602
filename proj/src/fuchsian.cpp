#include "szeta/fuchsian.hpp"

#include "szeta/errors.hpp"
#include "szeta/parallel.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <unordered_map>
#include <utility>

namespace szeta {

namespace {

constexpr double kKeyGrid = 9.5367431640625e-07;  // 2^-20

std::uint64_t fnv_mix(std::uint64_t h, std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
    return h;
}

/// Hash of the quantized entries of a sign-normalized matrix.
std::uint64_t base_key(const Mat2& m) {
    std::uint64_t h = 1469598103934665603ULL;
    const Real* entries[4] = {&m.a, &m.b, &m.c, &m.d};
    for (const Real* e : entries) {
        const double v = static_cast<double>(*e) / kKeyGrid;
        h = fnv_mix(h, static_cast<std::uint64_t>(std::llround(std::floor(v))));
    }
    return h;
}

/// All cell keys a matrix within tolerance of m could quantize to.
void candidate_keys(const Mat2& m, std::vector<std::uint64_t>& out) {
    std::array<std::array<std::int64_t, 2>, 4> cand{};
    std::array<int, 4> ncand{};
    const Real* entries[4] = {&m.a, &m.b, &m.c, &m.d};
    for (int i = 0; i < 4; ++i) {
        const double v = static_cast<double>(*entries[i]) / kKeyGrid;
        const double base = std::floor(v);
        const double frac = v - base;
        const double slack = 1e-9 + std::fabs(v) * 1e-12;
        cand[i][0] = static_cast<std::int64_t>(std::llround(base));
        ncand[i] = 1;
        if (frac < slack) {
            cand[i][ncand[i]++] = cand[i][0] - 1;
        } else if (frac > 1 - slack) {
            cand[i][ncand[i]++] = cand[i][0] + 1;
        }
    }
    for (int i0 = 0; i0 < ncand[0]; ++i0)
        for (int i1 = 0; i1 < ncand[1]; ++i1)
            for (int i2 = 0; i2 < ncand[2]; ++i2)
                for (int i3 = 0; i3 < ncand[3]; ++i3) {
                    std::uint64_t h = 1469598103934665603ULL;
                    h = fnv_mix(h, static_cast<std::uint64_t>(cand[0][i0]));
                    h = fnv_mix(h, static_cast<std::uint64_t>(cand[1][i1]));
                    h = fnv_mix(h, static_cast<std::uint64_t>(cand[2][i2]));
                    h = fnv_mix(h, static_cast<std::uint64_t>(cand[3][i3]));
                    out.push_back(h);
                }
}

Mat2 normalize_sign(const Mat2& m) {
    const Real tol = Precision::dedup_tol();
    const Real* entries[4] = {&m.a, &m.b, &m.c, &m.d};
    for (const Real* e : entries) {
        if (abs(*e) > tol) return *e < 0 ? -m : m;
    }
    return m;
}

/// (len, lex) order on letter words.
bool word_less(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

Word to_signed_word(const std::vector<int>& letters, std::size_t k) {
    Word w;
    w.reserve(letters.size());
    for (int l : letters) w.push_back(FuchsianGroup::letter_to_signed(l, k));
    return w;
}

Mat2 replay_word(const FuchsianGroup& group, const std::vector<int>& letters) {
    Mat2 m = Mat2::identity();
    for (int l : letters) m = m * group.letter_matrix(l);
    return m;
}

/// Deduplicated element set built during enumeration. The canonical word per
/// element is the (len, lex)-smallest seen; matrices are stored sign-normalized
/// with the raw trace sign kept alongside.
class ElementStore {
public:
    struct Rec {
        std::vector<int> word;
        Mat2 mat;
        int trace_sign;
        double frob;  // double shadow of the Frobenius norm squared
    };

    explicit ElementStore(const FuchsianGroup& group) : group_(&group) {}

    std::size_t size() const { return recs_.size(); }
    const Rec& rec(int i) const { return recs_[static_cast<std::size_t>(i)]; }
    bool lift_ambiguous() const { return lift_ambiguous_; }

    int insert(std::vector<int> word, const Mat2& raw) {
        const int found = find(raw);
        const int sign = raw.trace() < 0 ? -1 : +1;
        if (found >= 0) {
            Rec& r = recs_[static_cast<std::size_t>(found)];
            if (sign != r.trace_sign && abs(raw.trace()) > Precision::dedup_tol())
                lift_ambiguous_ = true;
            if (word_less(word, r.word)) {
                r.word = std::move(word);
                r.trace_sign = sign;
            }
            return found;
        }
        Rec r;
        r.trace_sign = sign;
        r.mat = normalize_sign(raw);
        r.frob = static_cast<double>(r.mat.frobenius_sq());
        r.word = std::move(word);
        recs_.push_back(std::move(r));
        const int idx = static_cast<int>(recs_.size()) - 1;
        buckets_[base_key(recs_.back().mat)].push_back(idx);
        return idx;
    }

    /// Index of the element projectively equal to `raw` at tolerance, or -1.
    /// Near-tolerance collisions are re-checked at doubled precision; if still
    /// ambiguous this throws PrecisionExhausted.
    int find(const Mat2& raw) const {
        const Mat2 m = normalize_sign(raw);
        const Real tol = Precision::dedup_tol();
        // Below this distance a match is within honest roundoff of the walk;
        // between it and the dedup tolerance the collision gets re-checked at
        // doubled precision.
        const Real trusted = pow10(8 - static_cast<int>(Precision::digits()));
        keys_.clear();
        candidate_keys(m, keys_);
        candidate_keys(-m, keys_);
        std::sort(keys_.begin(), keys_.end());
        keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
        for (std::uint64_t k : keys_) {
            auto it = buckets_.find(k);
            if (it == buckets_.end()) continue;
            for (int idx : it->second) {
                const Real d = recs_[static_cast<std::size_t>(idx)].mat.projective_dist(m);
                if (d < trusted) return idx;
                if (d < tol && confirm_collision(recs_[static_cast<std::size_t>(idx)].word, raw))
                    return idx;
            }
        }
        return -1;
    }

private:
    bool confirm_collision(const std::vector<int>& word, const Mat2& raw) const {
        const unsigned digits = Precision::digits();
        PrecisionGuard guard(2 * digits);
        const Mat2 lhs = replay_word(*group_, word);
        const Real d = lhs.projective_dist(raw);
        if (d < pow10(-static_cast<int>(digits))) return true;
        if (d > Precision::dedup_tol()) return false;
        throw PrecisionExhausted(
            "element dedup: collision remains ambiguous at doubled precision");
    }

    const FuchsianGroup* group_;
    std::vector<Rec> recs_;
    std::unordered_map<std::uint64_t, std::vector<int>> buckets_;
    mutable std::vector<std::uint64_t> keys_;
    bool lift_ambiguous_ = false;
};

/// Depth-first walk over reduced words with the given first letter; visits
/// every node once with its exact matrix.
void walk_subtree(const FuchsianGroup& group, int first_letter, int max_depth,
                  const std::function<void(const std::vector<int>&, const Mat2&)>& visit) {
    const std::size_t nl = group.alphabet_size();
    std::vector<Mat2> letters(nl);
    for (std::size_t l = 0; l < nl; ++l) letters[l] = group.letter_matrix(l);

    std::vector<Mat2> path(static_cast<std::size_t>(max_depth) + 1);
    path[0] = Mat2::identity();
    std::vector<int> word;
    word.reserve(static_cast<std::size_t>(max_depth));

    std::function<void(int)> descend = [&](int depth) {
        visit(word, path[static_cast<std::size_t>(depth)]);
        if (depth == max_depth) return;
        const std::size_t banned = group.inverse_letter(static_cast<std::size_t>(word.back()));
        for (std::size_t l = 0; l < nl; ++l) {
            if (l == banned) continue;
            mul_into(path[static_cast<std::size_t>(depth) + 1],
                     path[static_cast<std::size_t>(depth)], letters[l]);
            word.push_back(static_cast<int>(l));
            descend(depth + 1);
            word.pop_back();
        }
    };

    mul_into(path[1], path[0], letters[static_cast<std::size_t>(first_letter)]);
    word.push_back(first_letter);
    descend(1);
}

/// Double-precision mirror of the walk for the cheap trace survey.
using DMat = std::array<double, 4>;

DMat dmul(const DMat& x, const DMat& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

void walk_subtree_double(const std::vector<DMat>& letters,
                         const std::vector<std::size_t>& inverse, int first_letter,
                         int max_depth, const std::function<void(int, const DMat&)>& visit) {
    const std::size_t nl = letters.size();
    std::vector<DMat> path(static_cast<std::size_t>(max_depth) + 1);
    path[0] = {1, 0, 0, 1};
    std::vector<int> word;
    word.reserve(static_cast<std::size_t>(max_depth));

    std::function<void(int)> descend = [&](int depth) {
        visit(depth, path[static_cast<std::size_t>(depth)]);
        if (depth == max_depth) return;
        const std::size_t banned = inverse[static_cast<std::size_t>(word.back())];
        for (std::size_t l = 0; l < nl; ++l) {
            if (l == banned) continue;
            path[static_cast<std::size_t>(depth) + 1] =
                dmul(path[static_cast<std::size_t>(depth)], letters[l]);
            word.push_back(static_cast<int>(l));
            descend(depth + 1);
            word.pop_back();
        }
    };

    path[1] = dmul(path[0], letters[static_cast<std::size_t>(first_letter)]);
    word.push_back(first_letter);
    descend(1);
}

struct TraceSurvey {
    // quantized signed trace -> (trace value, min word length)
    std::map<long long, std::pair<double, int>> classes;
};

TraceSurvey trace_survey(const FuchsianGroup& group, int radius, double ell_cap) {
    const std::size_t nl = group.alphabet_size();
    std::vector<DMat> letters(nl);
    std::vector<std::size_t> inverse(nl);
    for (std::size_t l = 0; l < nl; ++l) {
        const Mat2 m = group.letter_matrix(l);
        letters[l] = {static_cast<double>(m.a), static_cast<double>(m.b),
                      static_cast<double>(m.c), static_cast<double>(m.d)};
        inverse[l] = group.inverse_letter(l);
    }
    const double tr_cap = 2 * std::cosh(ell_cap / 2) + 1e-9;

    std::vector<TraceSurvey> partial(nl);
    parallel_for_index(nl, [&](std::size_t first) {
        walk_subtree_double(
            letters, inverse, static_cast<int>(first), radius,
            [&](int depth, const DMat& m) {
                const double tr = m[0] + m[3];
                if (std::fabs(tr) <= 2 + 1e-9 || std::fabs(tr) > tr_cap) return;
                const long long key = std::llround(tr * 1048576.0);
                auto [it, inserted] =
                    partial[first].classes.try_emplace(key, std::make_pair(tr, depth));
                if (!inserted && depth < it->second.second) it->second.second = depth;
            });
    });

    TraceSurvey merged;
    for (const auto& p : partial) {
        for (const auto& [key, val] : p.classes) {
            auto [it, inserted] = merged.classes.try_emplace(key, val);
            if (!inserted && val.second < it->second.second) it->second.second = val.second;
        }
    }
    // Fuse adjacent cells holding the same trace value.
    for (auto it = merged.classes.begin(); it != merged.classes.end();) {
        auto next = std::next(it);
        if (next != merged.classes.end() &&
            std::fabs(next->second.first - it->second.first) < 1e-6) {
            next->second.second = std::min(next->second.second, it->second.second);
            it = merged.classes.erase(it);
        } else {
            ++it;
        }
    }
    return merged;
}

}  // namespace

Mat2 FuchsianGroup::letter_matrix(std::size_t letter) const {
    const std::size_t k = generators.size();
    if (letter < k) return generators[letter];
    return generators[letter - k].inverse_unimodular();
}

std::size_t FuchsianGroup::inverse_letter(std::size_t letter) const {
    const std::size_t k = generators.size();
    return letter < k ? letter + k : letter - k;
}

Letter FuchsianGroup::letter_to_signed(std::size_t letter, std::size_t k) {
    return letter < k ? static_cast<Letter>(letter + 1)
                      : -static_cast<Letter>(letter - k + 1);
}

FuchsianGroup bolza_group() {
    const Real sqrt2 = sqrt(Real(2));
    const Real x = sqrt(2 + 2 * sqrt2);
    const Mat2 h(1 + sqrt2, x, x, 1 + sqrt2);
    const Real pi = boost::math::constants::pi<Real>();

    FuchsianGroup g;
    g.genus = 2;
    g.label = "bolza";
    for (int k = 0; k < 4; ++k) {
        const Real theta = k * pi / 4;
        const Real c = cos(theta), s = sin(theta);
        const Mat2 rot(c, -s, s, c);
        const Mat2 rot_inv(c, s, -s, c);
        g.generators.push_back(rot * h * rot_inv);
    }
    return g;
}

std::vector<GroupElement> enumerate_ball(const FuchsianGroup& group, int radius) {
    if (radius < 1) throw Error("enumerate_ball: radius must be >= 1");
    const std::size_t nl = group.alphabet_size();

    std::vector<std::vector<std::pair<std::vector<int>, Mat2>>> collected(nl);
    parallel_for_index(nl, [&](std::size_t first) {
        walk_subtree(group, static_cast<int>(first), radius,
                     [&](const std::vector<int>& word, const Mat2& m) {
                         collected[first].emplace_back(word, m);
                     });
    });

    ElementStore store(group);
    store.insert({}, Mat2::identity());
    for (auto& subtree : collected)
        for (auto& [word, m] : subtree) store.insert(std::move(word), m);

    std::vector<int> order(store.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return word_less(store.rec(a).word, store.rec(b).word);
    });

    std::vector<GroupElement> out;
    out.reserve(order.size());
    const std::size_t k = group.generators.size();
    for (int idx : order) {
        const auto& r = store.rec(idx);
        // Restore the lift sign of the canonical word product.
        const bool flip = (r.trace_sign < 0) != (r.mat.trace() < 0);
        out.emplace_back(flip ? -r.mat : r.mat, to_signed_word(r.word, k));
    }
    return out;
}

BallCertificate certify_ball(const FuchsianGroup& group, const Real& L_max,
                             int max_radius) {
    const double lmax = static_cast<double>(L_max);
    for (int r = 4; r <= max_radius; ++r) {
        const TraceSurvey survey = trace_survey(group, r, lmax + 4.0);
        if (survey.classes.empty()) continue;

        std::map<int, double> min_len_at;  // w -> least length first appearing at w
        int deepest_relevant = 0;
        for (const auto& [key, val] : survey.classes) {
            const double ell = 2 * std::acosh(std::fabs(val.first) / 2);
            const int w = val.second;
            auto [it, inserted] = min_len_at.try_emplace(w, ell);
            if (!inserted && ell < it->second) it->second = ell;
            if (ell <= lmax + 1e-9 && w > deepest_relevant) deepest_relevant = w;
        }
        double slope = std::numeric_limits<double>::infinity();
        for (const auto& [w, ell] : min_len_at) slope = std::min(slope, ell / w);
        double offset = 0;
        for (const auto& [w, ell] : min_len_at) offset = std::max(offset, slope * w - ell);
        const double certified = slope * (r + 1) - offset;

        if (certified > lmax && r >= deepest_relevant + 2) {
            BallCertificate cert;
            cert.radius = r;
            cert.slope = Real(slope);
            cert.offset = Real(offset);
            cert.certified_length = Real(certified);
            cert.deepest_new_class = deepest_relevant;
            return cert;
        }
    }
    throw IncompleteBall("certify_ball: certificate does not reach L_max by max_radius");
}

namespace {

struct ClassInfo {
    Real length;
    int m_sign;
    std::vector<int> members;
    int rep;              // member with the (len,lex)-least word
    int min_frob_member;  // member with the least displacement
    bool primitive = true;
};

struct ClassTable {
    ElementStore store;
    std::vector<int> component;  // record index -> class index
    std::vector<ClassInfo> classes;
    bool warning = false;

    explicit ClassTable(const FuchsianGroup& group) : store(group) {}
};

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<int>(i);
    }
    int find(int x) {
        while (parent_[static_cast<std::size_t>(x)] != x)
            x = parent_[static_cast<std::size_t>(x)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }

private:
    std::vector<int> parent_;
};

Mat2 conj_by(const Mat2& letter, const Mat2& letter_inv, const Mat2& m) {
    return letter * m * letter_inv;
}

/// Walk the conjugation orbit of `start` through its low-displacement zone
/// (priority by displacement, bounded climb above the best level reached),
/// reporting every store record touched. Returns false on budget exhaustion.
bool explore_conjugates(const Mat2& start, const std::vector<Mat2>& letters,
                        const std::vector<Mat2>& letter_invs, const ElementStore& store,
                        int budget, double climb, const std::function<bool(int)>& on_record) {
    struct QNode {
        double frob;
        Mat2 m;
    };
    auto cmp = [](const QNode& a, const QNode& b) { return a.frob > b.frob; };
    std::priority_queue<QNode, std::vector<QNode>, decltype(cmp)> queue(cmp);
    std::unordered_map<std::uint64_t, char> visited;
    double best_disp = std::numeric_limits<double>::infinity();

    auto push = [&](const Mat2& m) {
        const Mat2 n = normalize_sign(m);
        const std::uint64_t key = base_key(n);
        if (!visited.emplace(key, 1).second) return;
        const double frob = static_cast<double>(n.frobenius_sq());
        const double disp = std::acosh(std::max(1.0, frob / 2));
        if (disp > best_disp + climb) return;
        best_disp = std::min(best_disp, disp);
        queue.push({frob, n});
    };

    push(start);
    int pops = 0;
    while (!queue.empty()) {
        if (++pops > budget) return false;
        const QNode node = queue.top();
        queue.pop();
        const int rec = store.find(node.m);
        if (rec >= 0 && !on_record(rec)) return true;  // caller is done
        for (std::size_t l = 0; l < letters.size(); ++l)
            push(conj_by(letters[l], letter_invs[l], node.m));
    }
    return true;
}

/// Greedy displacement descent from a record's matrix until another record is
/// hit. Returns the record index or -1 when stuck at a local minimum.
int descend_to_store(const Mat2& start, const std::vector<Mat2>& letters,
                     const std::vector<Mat2>& letter_invs, const ElementStore& store,
                     int max_steps) {
    Mat2 cur = normalize_sign(start);
    double cur_frob = static_cast<double>(cur.frobenius_sq());
    for (int step = 0; step < max_steps; ++step) {
        Mat2 best;
        double best_frob = cur_frob * (1 - 1e-12);
        bool improved = false;
        for (std::size_t l = 0; l < letters.size(); ++l) {
            Mat2 c = normalize_sign(conj_by(letters[l], letter_invs[l], cur));
            const double f = static_cast<double>(c.frobenius_sq());
            if (f < best_frob) {
                best = std::move(c);
                best_frob = f;
                improved = true;
            }
        }
        if (!improved) return -1;
        cur = std::move(best);
        cur_frob = best_frob;
        const int rec = store.find(cur);
        if (rec >= 0) return rec;
    }
    return -1;
}

Real length_merge_tol() { return pow10(-static_cast<int>(Precision::digits() / 2)); }

constexpr int kZoneBudget = 200000;
constexpr double kZoneClimb = 7.0;

/// Survivor enumeration, conjugacy splitting and primitivity marking for all
/// classes of length <= L_max reachable at the given radius.
ClassTable build_class_table(const FuchsianGroup& group, const Real& L_max, int radius) {
    const std::size_t nl = group.alphabet_size();
    const Real class_tol = Precision::classification_tol();
    const Real tr_cap = 2 * cosh(L_max / 2) + class_tol;

    std::vector<std::vector<std::pair<std::vector<int>, Mat2>>> collected(nl);
    parallel_for_index(nl, [&](std::size_t first) {
        walk_subtree(group, static_cast<int>(first), radius,
                     [&](const std::vector<int>& word, const Mat2& m) {
                         const Real tr = abs(m.trace());
                         if (tr > tr_cap) return;
                         if (tr <= 2 + class_tol) {
                             if (m.projective_dist(Mat2::identity()) <
                                 Precision::dedup_tol())
                                 return;  // a relator word
                             throw Error(
                                 "length_spectrum: nontrivial non-hyperbolic element "
                                 "(group not torsion-free cocompact, or precision too low)");
                         }
                         collected[first].emplace_back(word, m);
                     });
    });

    ClassTable table(group);
    for (auto& subtree : collected)
        for (auto& [word, m] : subtree) table.store.insert(std::move(word), m);
    const std::size_t n = table.store.size();

    std::vector<Real> lengths(n);
    for (std::size_t i = 0; i < n; ++i)
        lengths[i] = translation_length(table.store.rec(static_cast<int>(i)).mat);

    std::vector<Mat2> letters(nl), letter_invs(nl);
    for (std::size_t l = 0; l < nl; ++l) {
        letters[l] = group.letter_matrix(l);
        letter_invs[l] = group.letter_matrix(group.inverse_letter(l));
    }

    // Pass 1: conjugation edges that stay inside the survivor set.
    UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < nl; ++l) {
            const Mat2 c =
                conj_by(letters[l], letter_invs[l], table.store.rec(static_cast<int>(i)).mat);
            const int j = table.store.find(c);
            if (j >= 0) uf.unite(static_cast<int>(i), j);
        }
    }

    // Pass 2: collapse stray components by descending in displacement until
    // the orbit re-enters the set.
    for (std::size_t i = 0; i < n; ++i) {
        const int j = descend_to_store(table.store.rec(static_cast<int>(i)).mat, letters,
                                       letter_invs, table.store, 64);
        if (j >= 0) uf.unite(static_cast<int>(i), j);
    }

    // Bucket by (length, m_sign) at tolerance.
    std::vector<int> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return lengths[static_cast<std::size_t>(a)] <
                                         lengths[static_cast<std::size_t>(b)]; });
    const Real ltol = length_merge_tol();

    std::vector<std::vector<int>> buckets;
    for (std::size_t pos = 0; pos < order.size();) {
        std::size_t end = pos + 1;
        while (end < order.size() &&
               lengths[static_cast<std::size_t>(order[end])] -
                       lengths[static_cast<std::size_t>(order[end - 1])] <
                   ltol)
            ++end;
        std::vector<int> plus, minus;
        for (std::size_t q = pos; q < end; ++q)
            (table.store.rec(order[q]).trace_sign > 0 ? plus : minus).push_back(order[q]);
        if (!plus.empty()) buckets.push_back(std::move(plus));
        if (!minus.empty()) buckets.push_back(std::move(minus));
        pos = end;
    }

    // Pass 3: zone exploration merges components whose conjugation paths leave
    // the ball. Inconclusive (budget-bound) searches merge the bucket and set
    // the warning flag rather than overcounting classes.
    for (const auto& bucket : buckets) {
        std::map<int, int> roots;  // component root -> least-displacement member
        for (int idx : bucket) {
            auto [it, inserted] = roots.try_emplace(uf.find(idx), idx);
            if (!inserted &&
                table.store.rec(idx).frob < table.store.rec(it->second).frob)
                it->second = idx;
        }
        if (roots.size() < 2) continue;
        bool inconclusive = false;
        for (const auto& [root, member] : roots) {
            const bool complete = explore_conjugates(
                table.store.rec(member).mat, letters, letter_invs, table.store,
                kZoneBudget, kZoneClimb, [&](int rec) {
                    uf.unite(member, rec);
                    return true;  // keep exploring
                });
            if (!complete) inconclusive = true;
        }
        std::map<int, int> after;
        for (int idx : bucket) after.try_emplace(uf.find(idx), idx);
        if (after.size() > 1 && inconclusive) {
            table.warning = true;
            for (std::size_t q = 1; q < bucket.size(); ++q)
                uf.unite(bucket[0], bucket[q]);
        }
    }

    // Materialize classes in record order.
    std::map<int, int> root_to_class;
    for (std::size_t i = 0; i < n; ++i) {
        const int root = uf.find(static_cast<int>(i));
        auto [it, inserted] =
            root_to_class.try_emplace(root, static_cast<int>(table.classes.size()));
        if (inserted) {
            ClassInfo info;
            info.length = lengths[i];
            info.m_sign = table.store.rec(static_cast<int>(i)).trace_sign;
            info.rep = static_cast<int>(i);
            info.min_frob_member = static_cast<int>(i);
            table.classes.push_back(std::move(info));
        }
        ClassInfo& cls = table.classes[static_cast<std::size_t>(it->second)];
        cls.members.push_back(static_cast<int>(i));
        if (lengths[i] < cls.length) cls.length = lengths[i];
        if (word_less(table.store.rec(static_cast<int>(i)).word,
                      table.store.rec(cls.rep).word))
            cls.rep = static_cast<int>(i);
        if (table.store.rec(static_cast<int>(i)).frob <
            table.store.rec(cls.min_frob_member).frob)
            cls.min_frob_member = static_cast<int>(i);
    }
    table.component.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i)
        table.component[i] = root_to_class.at(uf.find(static_cast<int>(i)));

    if (table.classes.empty()) {
        if (table.store.lift_ambiguous()) table.warning = true;
        return table;
    }

    // Primitivity: class X of length l is a proper power iff some class at
    // length l/p powers into it. The ball is complete to L_max, so every
    // candidate root class is present.
    std::vector<int> class_order(table.classes.size());
    for (std::size_t i = 0; i < class_order.size(); ++i)
        class_order[i] = static_cast<int>(i);
    std::sort(class_order.begin(), class_order.end(), [&](int a, int b) {
        return table.classes[static_cast<std::size_t>(a)].length <
               table.classes[static_cast<std::size_t>(b)].length;
    });
    const Real systole = table.classes[static_cast<std::size_t>(class_order.front())].length;

    for (int ci : class_order) {
        ClassInfo& cls = table.classes[static_cast<std::size_t>(ci)];
        bool is_power = false;
        for (int p = 2; !is_power && Real(p) * systole <= cls.length + ltol; ++p) {
            const Real root_len = cls.length / p;
            for (int cj : class_order) {
                const ClassInfo& cand = table.classes[static_cast<std::size_t>(cj)];
                if (cand.length > root_len + ltol) break;
                if (abs(cand.length - root_len) > ltol) continue;
                const int msign_pow = (p % 2 == 0) ? +1 : cand.m_sign;
                if (msign_pow != cls.m_sign) continue;

                Mat2 power = table.store.rec(cand.rep).mat;
                for (int q = 1; q < p; ++q)
                    power = power * table.store.rec(cand.rep).mat;
                int rec = table.store.find(power);
                if (rec < 0)
                    rec = descend_to_store(power, letters, letter_invs, table.store, 256);
                if (rec < 0) {
                    int hit = -1;
                    const bool complete = explore_conjugates(
                        power, letters, letter_invs, table.store, kZoneBudget, kZoneClimb,
                        [&](int r) {
                            hit = r;
                            return false;  // stop at the first record
                        });
                    if (!complete) table.warning = true;
                    rec = hit;
                }
                if (rec >= 0 && table.component[static_cast<std::size_t>(rec)] == ci) {
                    is_power = true;
                    break;
                }
            }
        }
        cls.primitive = !is_power;
    }
    if (table.store.lift_ambiguous()) table.warning = true;
    return table;
}

}  // namespace

LengthSpectrum length_spectrum(const FuchsianGroup& group, const Real& L_max, int radius) {
    if (!(L_max > 0)) throw Error("length_spectrum: L_max must be positive");
    if (radius == 0) radius = certify_ball(group, L_max).radius;

    const ClassTable table = build_class_table(group, L_max, radius);
    const Real ltol = length_merge_tol();

    std::vector<const ClassInfo*> primitive;
    for (const auto& cls : table.classes)
        if (cls.primitive && cls.length <= L_max + ltol) primitive.push_back(&cls);
    std::sort(primitive.begin(), primitive.end(),
              [](const ClassInfo* a, const ClassInfo* b) { return a->length < b->length; });

    LengthSpectrum spec;
    spec.cutoff = L_max;
    spec.group_label = group.label;
    spec.conjugacy_warning = table.warning;
    const std::size_t k = group.generators.size();

    // Cluster by length at tolerance, then emit one entry per m_sign.
    for (std::size_t pos = 0; pos < primitive.size();) {
        std::size_t end = pos + 1;
        while (end < primitive.size() &&
               primitive[end]->length - primitive[end - 1]->length < ltol)
            ++end;
        for (int sign : {-1, +1}) {
            PrimeGeodesic g;
            g.m_sign = sign;
            g.multiplicity = 0;
            const std::vector<int>* best = nullptr;
            for (std::size_t q = pos; q < end; ++q) {
                if (primitive[q]->m_sign != sign) continue;
                ++g.multiplicity;
                const std::vector<int>& w =
                    table.store.rec(primitive[q]->rep).word;
                if (best == nullptr || word_less(w, *best)) best = &w;
                if (g.multiplicity == 1) g.length = primitive[q]->length;
                else g.length = std::min(g.length, primitive[q]->length);
            }
            if (g.multiplicity > 0) {
                g.representative_word = to_signed_word(*best, k);
                spec.geodesics.push_back(std::move(g));
            }
        }
        pos = end;
    }
    return spec;
}

bool is_primitive(const GroupElement& g, const FuchsianGroup& group, int search_radius) {
    const Real length = translation_length(g);  // throws NotHyperbolic
    const Real ltol = length_merge_tol();

    // Roots of g have length at most length/2; certify the ball covers them.
    bool roots_covered = false;
    Real systole_lower(0);
    try {
        const BallCertificate cert = certify_ball(group, length / 2, search_radius);
        roots_covered = true;
        systole_lower = cert.slope - cert.offset;  // the w = 1 bound
    } catch (const IncompleteBall&) {
    }

    const ClassTable table = build_class_table(group, length + 1, search_radius);
    if (table.warning)
        throw InconclusivePrimitivity("is_primitive: conjugacy search was inconclusive");
    if (table.classes.empty())
        throw InconclusivePrimitivity("is_primitive: no classes reachable at this radius");

    if (!roots_covered) {
        Real min_len = table.classes.front().length;
        for (const auto& cls : table.classes)
            if (cls.length < min_len) min_len = cls.length;
        const Real systole_bound = systole_lower > 0 && systole_lower < min_len
                                       ? systole_lower
                                       : min_len;
        if (!(length / 2 < systole_bound - ltol))
            throw InconclusivePrimitivity(
                "is_primitive: certificate cannot cover length/2 at this radius");
        // No root can exist anywhere: any root would undercut the systole.
    }

    const int rec = table.store.find(g.mat());
    if (rec < 0)
        throw InconclusivePrimitivity("is_primitive: element not found in the ball");
    return table.classes[static_cast<std::size_t>(table.component[static_cast<std::size_t>(rec)])]
        .primitive;
}

}  // namespace szeta
