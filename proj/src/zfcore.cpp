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

#include "corrdiv/zfcore.hpp"
#include "corrdiv/error.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <string>

namespace corrdiv
{
    namespace
    {
        void check_positive(double value, const char *name)
        {
            if (!(value > 0.0 && std::isfinite(value)))
                throw InvalidParameter(std::string(name) + " must be positive and finite");
        }

        void check_dimensions(Eigen::Index m, Eigen::Index l, double trace_sq)
        {
            if (l < 1 || m < l)
                throw InvalidParameter("closed form requires M >= L >= 1");
            // Tr[Rbar^2] = M + (nonnegative terms)
            if (!(trace_sq >= static_cast<double>(m) * (1.0 - 1e-12)) || !std::isfinite(trace_sq))
                throw InvalidParameter("Tr[Rbar^2] must be at least M (got " + std::to_string(trace_sq) + ")");
        }

        double binomial(int n, int k)
        {
            double c = 1.0;
            for (int i = 1; i <= k; ++i)
                c = c * (n - k + i) / i;
            return c;
        }
    }

    ChannelMatrix::ChannelMatrix(Eigen::MatrixXcd h) : h_(std::move(h))
    {
        if (h_.rows() < 1 || h_.rows() > h_.cols())
            throw DimensionMismatch("channel matrix must have 1 <= L <= M (got " + std::to_string(h_.rows()) + " x " +
                                    std::to_string(h_.cols()) + ")");
    }

    Eigen::MatrixXcd ChannelMatrix::gram() const
    {
        Eigen::MatrixXcd g(h_.rows(), h_.rows());
        g.setZero();
        g.selfadjointView<Eigen::Lower>().rankUpdate(h_);
        return g.selfadjointView<Eigen::Lower>();
    }

    ChannelMatrix sample_channel(std::span<const CorrelationFactor> factors, const Eigen::MatrixXcd &white)
    {
        const auto l = static_cast<Eigen::Index>(factors.size());
        if (l < 1)
            throw DimensionMismatch("at least one terminal is required");
        const auto m = factors.front().order();
        if (white.rows() != l || white.cols() != m)
            throw DimensionMismatch("white-noise matrix must be L x M");

        Eigen::MatrixXcd h(l, m);
        for (Eigen::Index t = 0; t < l; ++t)
        {
            const auto &b = factors[static_cast<std::size_t>(t)].matrix();
            if (b.rows() != m)
                throw DimensionMismatch("all correlation factors must share the same order");
            h.row(t).noalias() = white.row(t) * b.adjoint();
        }
        return ChannelMatrix(std::move(h));
    }

    ChannelMatrix sample_channel(std::span<const CorrelationFactor> factors, Philox4x32 &rng)
    {
        const auto l = static_cast<Eigen::Index>(factors.size());
        if (l < 1)
            throw DimensionMismatch("at least one terminal is required");
        const auto m = factors.front().order();

        ComplexNormal cn;
        Eigen::MatrixXcd white(l, m);
        for (Eigen::Index t = 0; t < l; ++t)
            for (Eigen::Index k = 0; k < m; ++k)
                white(t, k) = cn(rng);
        return sample_channel(factors, white);
    }

    double zf_eta_exact(const ChannelMatrix &h)
    {
        const Eigen::MatrixXcd g = h.gram();
        Eigen::LLT<Eigen::MatrixXcd> llt(g);
        if (llt.info() != Eigen::Success)
            throw IllConditionedChannel("HH^H is not numerically positive definite");
        if (!(llt.rcond() >= 1.0 / kConditionLimit))
            throw IllConditionedChannel("HH^H condition estimate exceeds " + std::to_string(kConditionLimit));

        // Tr[G^-1] = ||Lc^-1||_F^2 for G = Lc Lc^H
        const auto l = g.rows();
        Eigen::MatrixXcd inv_lower = Eigen::MatrixXcd::Identity(l, l);
        llt.matrixL().solveInPlace(inv_lower);
        const double trace_inverse = inv_lower.squaredNorm();
        return trace_inverse / static_cast<double>(l);
    }

    SnrReport zf_snr_from_eta(double eta, std::span<const double> betas, double rho_t, double sigma2)
    {
        check_positive(eta, "eta");
        check_positive(rho_t, "rho_t");
        check_positive(sigma2, "sigma2");

        SnrReport report;
        report.eta = eta;
        report.per_terminal_snr_linear.reserve(betas.size());
        for (const double beta : betas)
        {
            check_positive(beta, "link gain");
            const double snr = rho_t * beta / (sigma2 * eta);
            report.per_terminal_snr_linear.push_back(snr);
            report.sum_se_bits += std::log2(1.0 + snr);
        }
        return report;
    }

    SnrReport zf_snr_instantaneous(const ChannelMatrix &h, std::span<const double> betas, double rho_t, double sigma2)
    {
        if (static_cast<Eigen::Index>(betas.size()) != h.terminals())
            throw DimensionMismatch("need one link gain per terminal");
        return zf_snr_from_eta(zf_eta_exact(h), betas, rho_t, sigma2);
    }

    double neumann_trace_inverse(const ChannelMatrix &h, int order)
    {
        if (order < 1 || order > 3)
            throw InvalidParameter("Neumann order must be 1, 2 or 3");

        const Eigen::MatrixXcd g = h.gram();
        const double m = static_cast<double>(h.antennas());

        // traces[q] = Tr[G^q]
        std::vector<double> traces(static_cast<std::size_t>(order) + 1);
        Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(g.rows(), g.cols());
        for (int q = 0; q <= order; ++q)
        {
            traces[static_cast<std::size_t>(q)] = power.trace().real();
            if (q < order)
                power = power * g;
        }

        double sum = 0.0;
        for (int n = 0; n <= order; ++n)
            for (int q = 0; q <= n; ++q)
                sum += binomial(n, q) * ((q % 2 == 0) ? 1.0 : -1.0) / std::pow(m, q) * traces[static_cast<std::size_t>(q)];
        return sum / m;
    }

    double expected_trace_inverse_closed_form(Eigen::Index m, Eigen::Index l, double trace_sq)
    {
        check_dimensions(m, l, trace_sq);
        const double dm = static_cast<double>(m);
        const double dl = static_cast<double>(l);
        return dl / (dm * dm * dm) * (dm * dm + dl * trace_sq);
    }

    double expected_zf_snr_closed_form(double beta, Eigen::Index m, Eigen::Index l, double trace_sq, double rho_t,
                                       double sigma2, ClosedFormVariant variant)
    {
        check_dimensions(m, l, trace_sq);
        check_positive(beta, "link gain");
        check_positive(rho_t, "rho_t");
        check_positive(sigma2, "sigma2");

        const double dm = static_cast<double>(m);
        const double dl = static_cast<double>(l);
        double denominator = sigma2 * (dm * dm + dl * trace_sq);
        if (variant == ClosedFormVariant::LiteralPrinted)
            denominator *= dl;
        return rho_t * beta * dm * dm * dm / denominator;
    }

    double expected_sum_se_closed_form(std::span<const double> betas, Eigen::Index m, double trace_sq, double rho_t,
                                       double sigma2, ClosedFormVariant variant)
    {
        const auto l = static_cast<Eigen::Index>(betas.size());
        double total = 0.0;
        for (const double beta : betas)
            total += std::log2(1.0 + expected_zf_snr_closed_form(beta, m, l, trace_sq, rho_t, sigma2, variant));
        return total;
    }

    double moment_trace_gram_squared(std::span<const CorrelationMatrix> rs)
    {
        const auto avg = average_correlation(rs);
        const double m = static_cast<double>(rs.front().order());
        const double l = static_cast<double>(rs.size());
        return l * (m * m + l * avg.trace_sq);
    }
}
