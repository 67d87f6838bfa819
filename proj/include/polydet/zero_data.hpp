#pragma once

#include <iosfwd>
#include <string>

#include "polydet/config.hpp"
#include "polydet/fields.hpp"
#include "polydet/zero_table.hpp"

namespace polydet {

/// Parses the zeros text format: '#' comments, an optional "height: T" line and
/// one positive ordinate per line, optionally followed by a multiplicity.
/// Without a height line the last ordinate is used.
ZeroTable parse_zeros(std::istream& in, const std::string& source_id = "stream");
ZeroTable load_zeros(const std::string& path);

/// Writes the table in the format read by parse_zeros.
void export_zeros(const ZeroTable& table, std::ostream& out);
void export_zeros(const ZeroTable& table, const std::string& path);

/// Sign changes of the real rotation W^{-1/2} Lambda(1/2 + it) on 0 < t <= T,
/// scanned with step `grid` and bisected to 1e-9. Requires a self-dual
/// character and T <= 50.
ZeroTable find_zeros(const HeckeCharacter& chi, double height, const EvalConfig& cfg = {}, double grid = 0.05);

/// Smooth part of the zero count in 0 < t <= T from the gamma factors and the
/// conductor, theta(T) / pi + eps.
double zero_count_estimate(const HeckeCharacter& chi, double height);

/// Bound on sum_{|gamma| > T} |(z - rho) / 2 pi|^{-Re s} from the zero density
/// (1 / 2 pi) (log Q + n log(t / 2 pi)), with a safety factor 2. Heuristic.
double truncation_tail_estimate(cplx s, cplx z, double height, const HeckeCharacter& chi);

}  // namespace polydet
