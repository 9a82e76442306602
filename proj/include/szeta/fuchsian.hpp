#pragma once

#include "szeta/hyperbolic.hpp"
#include "szeta/numeric.hpp"

#include <string>
#include <vector>

namespace szeta {

/// Cocompact torsion-free Fuchsian group given by generator matrices.
/// Inverses are derived; vol(Y) = 4*pi*(genus-1).
struct FuchsianGroup {
    std::vector<Mat2> generators;
    int genus;
    std::string label;

    std::size_t alphabet_size() const { return 2 * generators.size(); }
    /// Letters 0..k-1 are the generators, k..2k-1 their inverses.
    Mat2 letter_matrix(std::size_t letter) const;
    std::size_t inverse_letter(std::size_t letter) const;
    static Letter letter_to_signed(std::size_t letter, std::size_t k);
};

/// The genus-2 Bolza surface group: generators R(k*pi/4) H R(k*pi/4)^{-1},
/// k = 0..3, with H = [[1+sqrt2, x],[x, 1+sqrt2]], x = sqrt(2+2*sqrt2).
FuchsianGroup bolza_group();

/// A primitive conjugacy class: geodesic length, M-part sign, and the number
/// of primitive classes sharing (length, m_sign). Inverse classes count
/// separately.
struct PrimeGeodesic {
    Real length;
    int m_sign;
    long multiplicity;
    Word representative_word;
};

struct LengthSpectrum {
    std::vector<PrimeGeodesic> geodesics;  // sorted by (length, m_sign)
    Real cutoff;                           // complete below this length
    std::string group_label;
    bool conjugacy_warning = false;  // a conjugator search was inconclusive
};

/// Completeness certificate for the word ball: measured linear lower bound
/// length >= slope*w - offset over class-minimal word lengths w, giving
/// certified_length = slope*(radius+1) - offset for anything outside the ball.
struct BallCertificate {
    int radius;
    Real slope;
    Real offset;
    Real certified_length;
    int deepest_new_class;  // largest minimal word length seen among relevant classes
};

/// All distinct group elements with a reduced word of length <= radius,
/// deduplicated projectively at tolerance. Order: word length, then
/// lexicographic on letters (generators before inverses). Includes the
/// identity. Throws PrecisionExhausted if a dedup collision stays ambiguous
/// at escalated precision.
std::vector<GroupElement> enumerate_ball(const FuchsianGroup& group, int radius);

/// Grow the radius until the measured certificate covers L_max.
/// Throws IncompleteBall past max_radius.
BallCertificate certify_ball(const FuchsianGroup& group, const Real& L_max,
                             int max_radius = 14);

/// Complete multiset of primitive conjugacy classes with length <= L_max.
/// radius = 0 selects the certified radius automatically.
LengthSpectrum length_spectrum(const FuchsianGroup& group, const Real& L_max,
                               int radius = 0);

/// True iff no enumerated class is an n-th root of g (n >= 2). Certified
/// through the ball certificate at search_radius; throws
/// InconclusivePrimitivity when the certificate cannot cover length(g)/2.
bool is_primitive(const GroupElement& g, const FuchsianGroup& group, int search_radius);

}  // namespace szeta
