#pragma once

#include "szeta/cohomology.hpp"
#include "szeta/divisor.hpp"
#include "szeta/fuchsian.hpp"

#include <iosfwd>
#include <string>

namespace szeta {

/// Length-spectrum cache file. Header lines `# group <label>`, `# Lmax <dec>`,
/// `# precision <int>`; one record per line: `ell <dec> m <+1|-1> mult <int>`.
/// Byte-stable for a fixed configuration.
void write_length_spectrum(std::ostream& os, const LengthSpectrum& spec);
LengthSpectrum read_length_spectrum(std::istream& is);

/// Laplace spectrum file. Header `# complete_below <dec>`; lines `mu <dec> mult <int>`.
void write_laplace_spectrum(std::ostream& os, const LaplaceSpectrum& spec);
LaplaceSpectrum read_laplace_spectrum(std::istream& is);

/// Divisor file: lines `lambda_re <dec> lambda_im <dec> ord <int>`, sorted.
void write_divisor(std::ostream& os, const Divisor& div);

/// Cohomology table line:
/// `g <int> lambda <dec|label> module <V|F|D> h0 <int> h1 <int> h2 <int> chi <int> chiprime <int>`.
void write_cohomology_table(std::ostream& os, const CohomologyTable& table);

/// Generator file for user-supplied groups. Header `# genus <int>`, optional
/// `# label <string>`; lines `gen <a> <b> <c> <d>`.
FuchsianGroup read_generators(std::istream& is);
void write_generators(std::ostream& os, const FuchsianGroup& group);

}  // namespace szeta
