#pragma once

#include "tempest/series.hpp"

#include <cstdint>

namespace tempest {

/// Bivariate-normal Gibbs sampler with systematic coordinate scans and exact
/// conditionals, started at the mean; 500 burn-in scans are discarded and
/// every `thin`-th scan thereafter is kept. The kept chain is an
/// autocorrelated sample from N(mean, cov).
TimeSeries gen_gibbs_normal(Index n, const Vector& mean, const Matrix& cov,
                            int thin, std::uint64_t seed);

/// Independent draws from N(mean, cov) via Cholesky.
TimeSeries gen_iid_normal(Index n, const Vector& mean, const Matrix& cov,
                          std::uint64_t seed);

/// Pitch-evoking sound: latent patterns follow a_i = lambda a_{i-1} +
/// sqrt(1-lambda^2) eps_i in R^d, and observation i superposes the patterns
/// of neighboring periods through a Gaussian window of width
/// sigma = sigma_frac * Omega (period length Omega = 1, sample grid
/// t_r = (r-1)/d). Neighbors beyond |j - i| > neighborhood are truncated
/// (at the widths used their window weight is below e^{-200}); the latent
/// chain is extended past both ends so every observation sees a full
/// neighborhood, anchored at period 0 so that widening the neighborhood
/// leaves the shared periods' patterns unchanged.
TimeSeries gen_pitch_sound(Index num_periods, int d, double sigma_frac,
                           double lambda, std::uint64_t seed,
                           int neighborhood = 2);

/// Pair of AR(1) chains whose innovations (eps, eta) are drawn jointly
/// standard normal and resampled until eps^2 + eta^2 > radius^2. The
/// rejection couples the chains (radius > 0) without cross-correlation;
/// radius = 0 gives independent chains. This reconstructs the "extinct
/// Gaussian" family from its description: the AR coefficient controls
/// temporal dependence and the extinction radius cross-dependence.
PairedSeries gen_extinct_gaussian_pair(Index n, double ar,
                                       double extinction_radius,
                                       std::uint64_t seed);

/// Volatility-coupled pair sharing a conditional variance:
///   X_t = eps1 * s_t, Y_t = eps2 * s_t,
///   s_t^2 = 1 + coupling * (X_{t-1}^2 + Y_{t-1}^2), s_0^2 = 1.
/// Marginally uncorrelated, dependent through the shared variance; stable
/// for coupling < 0.5 (the accepted range stops at 0.45). Aborts if the
/// recursion exceeds 1e6 in magnitude.
PairedSeries gen_vec_pair(Index n, double coupling, std::uint64_t seed);

/// Noisy coupled oscillators:
///   phi_{t,i} = phi_{t-1,i} + 0.1 eps_i + 2 pi f_i Ts, phi_0 = 0,
///   X_t = cos(phi_{t,1}), Y_t = [2 + C sin(phi_{t,1})] cos(phi_{t,2}).
/// C = 0 decouples the pair.
PairedSeries gen_oscillator_pair(Index n, double c, double f1, double f2,
                                 double ts, std::uint64_t seed);

/// Two independent AR(1) chains with standard-normal innovations.
PairedSeries gen_ar1_pair(Index n, double ar, std::uint64_t seed);

/// Two independent standard-normal white-noise series.
PairedSeries gen_white_noise_pair(Index n, std::uint64_t seed);

}  // namespace tempest
