#ifndef RADFRICTION_WAVEPACKET_HPP
#define RADFRICTION_WAVEPACKET_HPP

#include <vector>

#include "radfriction/vec3.hpp"

namespace radfriction {

// Discrete samples of the initial momentum distribution |f(p0)|^2.  The
// initial momentum is constrained to the x axis.
struct MomentumSample {
    double p0x = 0.0;   // momentum along x
    double weight = 0.0; // |f|^2 dp, dimensionless
};

class MomentumWavepacket {
public:
    // Rejects samples with nonzero transverse momentum or non-normalized
    // weights (sum must be 1 to 1e-12 before the final renormalization).
    static MomentumWavepacket from_samples(const std::vector<Vec3>& momenta,
                                           const std::vector<double>& weights);

    // Gauss-Hermite samples of a Gaussian |f|^2 with the given mean and
    // standard deviation.  sigma == 0 collapses to a single sample.
    static MomentumWavepacket gaussian(double mean_p, double sigma, int n_samples);

    const std::vector<MomentumSample>& samples() const { return samples_; }
    double mean_p() const;

private:
    std::vector<MomentumSample> samples_;
};

} // namespace radfriction

#endif
