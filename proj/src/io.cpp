#include "szeta/io.hpp"

#include "szeta/errors.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace szeta {

namespace {

std::string expect_token(std::istream& is, const char* what) {
    std::string tok;
    if (!(is >> tok)) throw Error(std::string("parse error: expected ") + what);
    return tok;
}

void require_token(std::istream& is, const std::string& want) {
    const std::string tok = expect_token(is, want.c_str());
    if (tok != want) throw Error("parse error: expected '" + want + "', got '" + tok + "'");
}

}  // namespace

void write_length_spectrum(std::ostream& os, const LengthSpectrum& spec) {
    os << "# group " << spec.group_label << "\n";
    os << "# Lmax " << format_real(spec.cutoff) << "\n";
    os << "# precision " << Precision::digits() << "\n";
    if (spec.conjugacy_warning) os << "# warning inconclusive-conjugacy-search\n";
    for (const PrimeGeodesic& g : spec.geodesics) {
        os << "ell " << format_real(g.length) << " m " << (g.m_sign > 0 ? "+1" : "-1")
           << " mult " << g.multiplicity << "\n";
    }
}

LengthSpectrum read_length_spectrum(std::istream& is) {
    LengthSpectrum spec;
    spec.cutoff = Real(0);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "#") {
            std::string key;
            ls >> key;
            if (key == "group") {
                ls >> spec.group_label;
            } else if (key == "Lmax") {
                spec.cutoff = parse_real(expect_token(ls, "Lmax value"));
            } else if (key == "warning") {
                spec.conjugacy_warning = true;
            }
            continue;
        }
        if (head != "ell") throw Error("length spectrum: unexpected line '" + line + "'");
        PrimeGeodesic g;
        g.length = parse_real(expect_token(ls, "length"));
        require_token(ls, "m");
        const std::string sign = expect_token(ls, "sign");
        if (sign == "+1") g.m_sign = +1;
        else if (sign == "-1") g.m_sign = -1;
        else throw Error("length spectrum: bad sign '" + sign + "'");
        require_token(ls, "mult");
        ls >> g.multiplicity;
        if (!ls || g.multiplicity < 1) throw Error("length spectrum: bad multiplicity");
        spec.geodesics.push_back(std::move(g));
    }
    return spec;
}

void write_laplace_spectrum(std::ostream& os, const LaplaceSpectrum& spec) {
    os << "# complete_below " << format_real(spec.complete_below) << "\n";
    for (const auto& e : spec.entries)
        os << "mu " << format_real(e.mu) << " mult " << e.mult << "\n";
}

LaplaceSpectrum read_laplace_spectrum(std::istream& is) {
    std::vector<LaplaceSpectrum::Entry> entries;
    Real complete_below(-1);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "#") {
            std::string key;
            ls >> key;
            if (key == "complete_below")
                complete_below = parse_real(expect_token(ls, "cutoff"));
            continue;
        }
        if (head != "mu") throw Error("laplace spectrum: unexpected line '" + line + "'");
        LaplaceSpectrum::Entry e;
        e.mu = parse_real(expect_token(ls, "mu"));
        require_token(ls, "mult");
        ls >> e.mult;
        if (!ls) throw Error("laplace spectrum: bad multiplicity");
        entries.push_back(std::move(e));
    }
    if (complete_below < 0) throw Error("laplace spectrum: missing complete_below header");
    return LaplaceSpectrum::make(std::move(entries), std::move(complete_below));
}

void write_divisor(std::ostream& os, const Divisor& div) {
    for (const auto& [p, d] : div.points()) {
        os << "lambda_re " << format_real(real(p)) << " lambda_im " << format_real(imag(p))
           << " ord " << d << "\n";
    }
}

void write_cohomology_table(std::ostream& os, const CohomologyTable& t) {
    const char* module = "V";
    if (t.coefficient_module == CoefficientModule::FiniteDim) module = "F";
    else if (t.coefficient_module == CoefficientModule::DiscreteSeries) module = "D";
    os << "g " << t.genus << " lambda " << t.label << " module " << module << " h0 " << t.h0
       << " h1 " << t.h1 << " h2 " << t.h2 << " chi " << t.chi() << " chiprime "
       << t.chi_prime() << "\n";
}

FuchsianGroup read_generators(std::istream& is) {
    FuchsianGroup g;
    g.genus = 0;
    g.label = "file";
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string head;
        ls >> head;
        if (head == "#") {
            std::string key;
            ls >> key;
            if (key == "genus") ls >> g.genus;
            else if (key == "label") ls >> g.label;
            continue;
        }
        if (head != "gen") throw Error("generator file: unexpected line '" + line + "'");
        Mat2 m;
        m.a = parse_real(expect_token(ls, "a"));
        m.b = parse_real(expect_token(ls, "b"));
        m.c = parse_real(expect_token(ls, "c"));
        m.d = parse_real(expect_token(ls, "d"));
        if (abs(m.det() - 1) > Precision::classification_tol())
            throw Error("generator file: matrix is not unimodular");
        g.generators.push_back(std::move(m));
    }
    if (g.genus < 2) throw Error("generator file: missing or invalid '# genus'");
    if (g.generators.empty()) throw Error("generator file: no generators");
    return g;
}

void write_generators(std::ostream& os, const FuchsianGroup& group) {
    os << "# genus " << group.genus << "\n";
    os << "# label " << group.label << "\n";
    for (const Mat2& m : group.generators) {
        os << "gen " << format_real(m.a) << " " << format_real(m.b) << " "
           << format_real(m.c) << " " << format_real(m.d) << "\n";
    }
}

}  // namespace szeta
