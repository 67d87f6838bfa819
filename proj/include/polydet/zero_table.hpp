#pragma once

#include <complex>
#include <string>
#include <vector>

namespace polydet {

/// Ordinates of nontrivial zeros, ascending, with the height below which the
/// table is believed complete.
struct ZeroTable {
    std::string source_id;
    std::vector<double> ordinates;
    std::vector<int> multiplicities;  // same length as ordinates
    double completeness_height = 0.0;
    bool assumes_critical_line = true;

    std::size_t size() const noexcept { return ordinates.size(); }
    bool empty() const noexcept { return ordinates.empty(); }

    /// Zeros 1/2 + i gamma and 1/2 - i gamma, ordered by |Im|, conjugates adjacent.
    std::vector<std::complex<double>> zeros() const;

    /// First k ordinates; the completeness height becomes the k-th ordinate.
    ZeroTable prefix(std::size_t k) const;

    /// Checks ordering, positivity, multiplicities and height.
    void validate() const;
};

}  // namespace polydet
