#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "horolab/rng.hpp"

namespace horolab::qmc {

// Radical inverse of i in the given base (Halton component).
double radical_inverse(std::uint64_t i, unsigned base);

// First dims prime bases.
const std::vector<unsigned>& halton_bases(int dims);

struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;
};

struct EstimateC {
    std::complex<double> value{0.0, 0.0};
    double stderr_ = 0.0;  // combined (real/imag in quadrature)
};

// Low-discrepancy point set with seedable randomization: replication r applies
// an independent Cranley-Patterson shift per dimension.  Point (r, i, k) is a
// pure function of (seed, r, i, k), so generation parallelizes over index
// ranges without changing the stream.
class Halton {
public:
    Halton(int dims, rng::Stream shift_stream, int replications = 8);

    int dims() const { return dims_; }
    int replications() const { return replications_; }

    // coordinate in [0,1)
    double coord(int replication, std::uint64_t index, int dim) const;

    template <class OutIt>
    void point(int replication, std::uint64_t index, OutIt out) const {
        for (int k = 0; k < dims_; ++k) *out++ = coord(replication, index, k);
    }

private:
    int dims_;
    int replications_;
    std::vector<unsigned> bases_;
    std::vector<double> shifts_;  // replications_ x dims_
};

// Replication statistics: mean of per-replication means, stderr across them.
Estimate combine(const std::vector<double>& replication_means);
EstimateC combine(const std::vector<std::complex<double>>& replication_means);

}  // namespace horolab::qmc
