#include "radfriction/wavepacket.hpp"

#include <cmath>
#include <stdexcept>

#include "radfriction/quadrules.hpp"

namespace radfriction {

MomentumWavepacket MomentumWavepacket::from_samples(const std::vector<Vec3>& momenta,
                                                    const std::vector<double>& weights) {
    if (momenta.size() != weights.size() || momenta.empty())
        throw std::invalid_argument("wavepacket: empty or mismatched sample lists");
    MomentumWavepacket pack;
    KahanSum wsum;
    for (std::size_t i = 0; i < momenta.size(); ++i) {
        if (momenta[i].y != 0.0 || momenta[i].z != 0.0)
            throw std::invalid_argument("wavepacket: initial momentum must lie along x");
        if (!(weights[i] >= 0.0))
            throw std::invalid_argument("wavepacket: negative weight");
        pack.samples_.push_back({momenta[i].x, weights[i]});
        wsum.add(weights[i]);
    }
    if (std::abs(wsum.sum - 1.0) > 1e-12)
        throw std::invalid_argument("wavepacket: weights must sum to 1");
    for (auto& s : pack.samples_) s.weight /= wsum.sum;
    return pack;
}

MomentumWavepacket MomentumWavepacket::gaussian(double mean_p, double sigma, int n_samples) {
    if (n_samples < 1) throw std::invalid_argument("wavepacket: n_samples < 1");
    if (sigma < 0.0) throw std::invalid_argument("wavepacket: sigma < 0");
    MomentumWavepacket pack;
    if (sigma == 0.0 || n_samples == 1) {
        pack.samples_.push_back({mean_p, 1.0});
        return pack;
    }
    // |f|^2 ~ exp(-(p-mean)^2 / 2 sigma^2); substitute p = mean + sqrt(2) sigma x.
    const QuadRule gh = gauss_hermite(n_samples);
    const double inv_sqrt_pi = 1.0 / std::sqrt(M_PI);
    KahanSum wsum;
    for (int i = 0; i < n_samples; ++i) {
        const double p = mean_p + std::sqrt(2.0) * sigma * gh.nodes[i];
        const double w = gh.weights[i] * inv_sqrt_pi;
        pack.samples_.push_back({p, w});
        wsum.add(w);
    }
    for (auto& s : pack.samples_) s.weight /= wsum.sum;
    return pack;
}

double MomentumWavepacket::mean_p() const {
    KahanSum sum;
    for (const auto& s : samples_) sum.add(s.weight * s.p0x);
    return sum.sum;
}

} // namespace radfriction
