// SPDX-License-Identifier: Apache-2.0
//
// corrdiv - correlation diversity simulator for zero-forcing MU-MIMO downlinks
// Copyright (C) 2026 The corrdiv authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef CORRDIV_ZFCORE_HPP
#define CORRDIV_ZFCORE_HPP

#include "corrdiv/corrmodels.hpp"
#include "corrdiv/rng.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace corrdiv
{
    // Reciprocal condition estimate of HH^H below 1/kConditionLimit rejects the trial.
    inline constexpr double kConditionLimit = 1e12;

    // L x M small-scale fading matrix; row l is terminal l's channel h_l (link gains excluded).
    class ChannelMatrix
    {
    public:
        // Requires 1 <= L <= M.
        explicit ChannelMatrix(Eigen::MatrixXcd h);

        Eigen::Index terminals() const { return h_.rows(); }
        Eigen::Index antennas() const { return h_.cols(); }
        const Eigen::MatrixXcd &matrix() const { return h_; }

        // HH^H (L x L)
        Eigen::MatrixXcd gram() const;

    private:
        Eigen::MatrixXcd h_;
    };

    struct SnrReport
    {
        std::vector<double> per_terminal_snr_linear;
        double eta = 0.0;
        double sum_se_bits = 0.0;
    };

    // Row l = w_l * B_l^H for the given L x M white-noise matrix w.
    ChannelMatrix sample_channel(std::span<const CorrelationFactor> factors, const Eigen::MatrixXcd &white);

    // Draws w ~ CN(0, I) from `rng`, row by row, then maps it as above.
    ChannelMatrix sample_channel(std::span<const CorrelationFactor> factors, Philox4x32 &rng);

    // eta = Tr[(HH^H)^-1] / L through a Cholesky factorization of HH^H.
    // Throws IllConditionedChannel if HH^H is not numerically positive definite or its
    // reciprocal condition estimate is below 1/kConditionLimit.
    double zf_eta_exact(const ChannelMatrix &h);

    // snr_l = rho_t beta_l / (sigma2 eta); the sum SE is sum_l log2(1 + snr_l).
    SnrReport zf_snr_from_eta(double eta, std::span<const double> betas, double rho_t, double sigma2);
    SnrReport zf_snr_instantaneous(const ChannelMatrix &h, std::span<const double> betas, double rho_t,
                                   double sigma2);

    // Order-N Neumann approximation of Tr[(HH^H)^-1] around M*I, in the binomial form
    //   (1/M) sum_{n=0}^{N} sum_{q=0}^{n} C(n,q) (-1)^q M^-q Tr[(HH^H)^q].
    // N must be 1, 2 or 3.
    double neumann_trace_inverse(const ChannelMatrix &h, int order);

    enum class ClosedFormVariant
    {
        // rho beta M^3 / (sigma2 (M^2 + L Tr[Rbar^2])): the second-order Neumann mean substituted
        // into the Laplace-approximated SNR.
        DerivationConsistent,
        // rho beta M^3 / (sigma2 L (M^2 + L Tr[Rbar^2])), the literal printed form.
        // Kept only to document that it is off by a factor of L.
        LiteralPrinted,
    };

    // (L / M^3)(M^2 + L Tr[Rbar^2]), the approximate mean of Tr[(HH^H)^-1].
    double expected_trace_inverse_closed_form(Eigen::Index m, Eigen::Index l, double trace_sq);

    double expected_zf_snr_closed_form(double beta, Eigen::Index m, Eigen::Index l, double trace_sq, double rho_t,
                                       double sigma2,
                                       ClosedFormVariant variant = ClosedFormVariant::DerivationConsistent);

    // sum_l log2(1 + closed-form expected SNR of terminal l); L is betas.size().
    double expected_sum_se_closed_form(std::span<const double> betas, Eigen::Index m, double trace_sq, double rho_t,
                                       double sigma2,
                                       ClosedFormVariant variant = ClosedFormVariant::DerivationConsistent);

    // E{Tr[(HH^H)^2]} = L (M^2 + L Tr[Rbar^2]); exact for CN(0, R_l) rows.
    double moment_trace_gram_squared(std::span<const CorrelationMatrix> rs);
}

#endif
