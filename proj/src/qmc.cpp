#include "horolab/qmc.hpp"

#include <cmath>
#include <stdexcept>

namespace horolab::qmc {

double radical_inverse(std::uint64_t i, unsigned base) {
    if (base == 2) {
        // bit reversal
        std::uint64_t v = i;
        v = ((v & 0x5555555555555555ull) << 1) | ((v >> 1) & 0x5555555555555555ull);
        v = ((v & 0x3333333333333333ull) << 2) | ((v >> 2) & 0x3333333333333333ull);
        v = ((v & 0x0f0f0f0f0f0f0f0full) << 4) | ((v >> 4) & 0x0f0f0f0f0f0f0f0full);
        v = ((v & 0x00ff00ff00ff00ffull) << 8) | ((v >> 8) & 0x00ff00ff00ff00ffull);
        v = ((v & 0x0000ffff0000ffffull) << 16) | ((v >> 16) & 0x0000ffff0000ffffull);
        v = (v << 32) | (v >> 32);
        return static_cast<double>(v >> 11) * 0x1.0p-53;
    }
    double inv_base = 1.0 / base;
    double result = 0.0;
    double scale = inv_base;
    while (i > 0) {
        result += static_cast<double>(i % base) * scale;
        i /= base;
        scale *= inv_base;
    }
    return result;
}

const std::vector<unsigned>& halton_bases(int dims) {
    static const std::vector<unsigned> primes = {2,  3,  5,  7,  11, 13, 17, 19,
                                                 23, 29, 31, 37, 41, 43, 47, 53};
    if (dims > static_cast<int>(primes.size()))
        throw std::domain_error("qmc: dimension too large for Halton bases");
    return primes;
}

Halton::Halton(int dims, rng::Stream shift_stream, int replications)
    : dims_(dims), replications_(replications), bases_(halton_bases(dims)) {
    shifts_.resize(static_cast<std::size_t>(dims_) * replications_);
    for (int r = 0; r < replications_; ++r)
        for (int k = 0; k < dims_; ++k)
            shifts_[static_cast<std::size_t>(r) * dims_ + k] =
                shift_stream.uniform(static_cast<std::uint64_t>(r) * dims_ + k);
}

double Halton::coord(int replication, std::uint64_t index, int dim) const {
    double v = radical_inverse(index + 1, bases_[static_cast<std::size_t>(dim)]) +
               shifts_[static_cast<std::size_t>(replication) * dims_ + dim];
    return v < 1.0 ? v : v - 1.0;
}

Estimate combine(const std::vector<double>& means) {
    Estimate e;
    const std::size_t r = means.size();
    for (double m : means) e.value += m;
    e.value /= static_cast<double>(r);
    if (r > 1) {
        double ss = 0.0;
        for (double m : means) ss += (m - e.value) * (m - e.value);
        e.stderr_ = std::sqrt(ss / static_cast<double>(r - 1) / static_cast<double>(r));
    }
    return e;
}

EstimateC combine(const std::vector<std::complex<double>>& means) {
    EstimateC e;
    const std::size_t r = means.size();
    for (auto m : means) e.value += m;
    e.value /= static_cast<double>(r);
    if (r > 1) {
        double ss = 0.0;
        for (auto m : means) ss += std::norm(m - e.value);
        e.stderr_ = std::sqrt(ss / static_cast<double>(r - 1) / static_cast<double>(r));
    }
    return e;
}

}  // namespace horolab::qmc
