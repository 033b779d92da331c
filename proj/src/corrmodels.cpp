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

#include "corrdiv/corrmodels.hpp"
#include "corrdiv/error.hpp"
#include "corrdiv/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace corrdiv
{
    namespace
    {
        constexpr double kDegToRad = std::numbers::pi / 180.0;

        // |r_ij| may exceed 1 by rounding in quadrature sums.
        constexpr double kMagnitudeSlack = 1e-12;

        void check_order(Eigen::Index m)
        {
            if (m < 1)
                throw InvalidParameter("correlation matrix order must be >= 1 (got " + std::to_string(m) + ")");
        }

        void check_xi(double xi)
        {
            if (!(xi >= 0.0 && xi <= 1.0))
                throw InvalidParameter("correlation magnitude xi must lie in [0, 1] (got " + std::to_string(xi) + ")");
        }

        // Hermitian Toeplitz matrix from its first column c[k] = R(i + k, i).
        Eigen::MatrixXcd hermitian_toeplitz(const std::vector<std::complex<double>> &lower)
        {
            const auto m = static_cast<Eigen::Index>(lower.size());
            Eigen::MatrixXcd r(m, m);
            for (Eigen::Index j = 0; j < m; ++j)
            {
                r(j, j) = 1.0;
                for (Eigen::Index i = j + 1; i < m; ++i)
                {
                    const auto &v = lower[static_cast<std::size_t>(i - j)];
                    r(i, j) = v;
                    r(j, i) = std::conj(v);
                }
            }
            return r;
        }
    }

    CorrelationMatrix::CorrelationMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries))
    {
        const auto m = entries_.rows();
        if (m < 1 || entries_.cols() != m)
            throw InvalidParameter("correlation matrix must be square and nonempty");

        for (Eigen::Index j = 0; j < m; ++j)
        {
            if (entries_(j, j) != std::complex<double>(1.0, 0.0))
                throw InvalidParameter("correlation matrix diagonal must be exactly 1 (entry " + std::to_string(j) + ")");
            for (Eigen::Index i = j + 1; i < m; ++i)
            {
                if (entries_(i, j) != std::conj(entries_(j, i)))
                    throw InvalidParameter("correlation matrix is not Hermitian at (" + std::to_string(i) + ", " +
                                           std::to_string(j) + ")");
                if (!(std::abs(entries_(i, j)) <= 1.0 + kMagnitudeSlack))
                    throw InvalidParameter("correlation coefficient magnitude exceeds 1 at (" + std::to_string(i) +
                                           ", " + std::to_string(j) + ")");
            }
        }

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
        min_eigenvalue_ = solver.eigenvalues().minCoeff();
        if (min_eigenvalue_ < -kPsdRepairTolerance)
            throw IndefiniteMatrix("correlation matrix is indefinite: smallest eigenvalue " +
                                   std::to_string(min_eigenvalue_));
    }

    double CorrelationFactor::reconstruction_error(const CorrelationMatrix &r) const
    {
        if (r.order() != order())
            throw DimensionMismatch("factor and correlation matrix differ in order");
        return (b_ * b_.adjoint() - r.matrix()).cwiseAbs().maxCoeff();
    }

    std::string_view to_string(CorrelationModel model)
    {
        switch (model)
        {
        case CorrelationModel::Exponential:
            return "exponential";
        case CorrelationModel::Clerckx:
            return "clerckx";
        case CorrelationModel::OneRing:
            return "one_ring";
        }
        return "unknown";
    }

    void CorrelationModelSpec::validate() const
    {
        switch (variant)
        {
        case CorrelationModel::Exponential:
            check_xi(xi);
            break;
        case CorrelationModel::Clerckx:
            check_xi(xi);
            if (!std::isfinite(phase_range_deg.low_deg) || !std::isfinite(phase_range_deg.high_deg) ||
                phase_range_deg.low_deg > phase_range_deg.high_deg)
                throw InvalidParameter("Clerckx phase range must be a finite interval [low, high] with low <= high");
            break;
        case CorrelationModel::OneRing:
            if (angular_spread_deg && !(*angular_spread_deg > 0.0 && *angular_spread_deg <= 180.0))
                throw InvalidParameter("one-ring angular spread must lie in (0, 180] degrees");
            if (mean_doa_deg && !std::isfinite(*mean_doa_deg))
                throw InvalidParameter("one-ring mean DOA must be finite");
            if (!(element_spacing_wavelengths > 0.0 && std::isfinite(element_spacing_wavelengths)))
                throw InvalidParameter("element spacing must be positive");
            break;
        }
    }

    CorrelationMatrix build_exponential(Eigen::Index m, double xi)
    {
        check_order(m);
        check_xi(xi);
        std::vector<std::complex<double>> lower(static_cast<std::size_t>(m));
        lower[0] = 1.0;
        for (std::size_t k = 1; k < lower.size(); ++k)
            lower[k] = std::pow(xi, static_cast<double>(k));
        return CorrelationMatrix(hermitian_toeplitz(lower));
    }

    CorrelationMatrix build_clerckx(Eigen::Index m, double xi, double phase_deg)
    {
        check_order(m);
        check_xi(xi);
        if (!std::isfinite(phase_deg))
            throw InvalidParameter("Clerckx phase must be finite");

        // Below the diagonal (i - j = k > 0) the entry is conj((xi e^{j phase})^k).
        const double phase = phase_deg * kDegToRad;
        std::vector<std::complex<double>> lower(static_cast<std::size_t>(m));
        lower[0] = 1.0;
        for (std::size_t k = 1; k < lower.size(); ++k)
        {
            const double dk = static_cast<double>(k);
            lower[k] = std::polar(std::pow(xi, dk), -phase * dk);
        }
        return CorrelationMatrix(hermitian_toeplitz(lower));
    }

    CorrelationMatrix build_one_ring(Eigen::Index m, double angular_spread_deg, double mean_doa_deg,
                                     double spacing_wavelengths)
    {
        check_order(m);
        if (!(angular_spread_deg > 0.0 && angular_spread_deg <= 180.0))
            throw InvalidParameter("one-ring angular spread must lie in (0, 180] degrees (got " +
                                   std::to_string(angular_spread_deg) + ")");
        if (!(spacing_wavelengths > 0.0 && std::isfinite(spacing_wavelengths)))
            throw InvalidParameter("element spacing must be positive (got " + std::to_string(spacing_wavelengths) + ")");
        if (!std::isfinite(mean_doa_deg))
            throw InvalidParameter("one-ring mean DOA must be finite");

        const double spread = angular_spread_deg * kDegToRad;
        const double doa = mean_doa_deg * kDegToRad;

        // Entries are bounded by the unit diagonal, so agreement is judged on that scale.
        quadrature::DoublingOptions opt;
        opt.scale_floor = 1.0;

        // phi = doa + spread * t maps the window onto t in [-1, 1]; the 1/(2 spread) prefactor
        // then becomes 1/2.
        std::vector<std::complex<double>> lower(static_cast<std::size_t>(m));
        lower[0] = 1.0;
        for (std::size_t k = 1; k < lower.size(); ++k)
        {
            const double phase_scale = -2.0 * std::numbers::pi * spacing_wavelengths * static_cast<double>(k);
            auto integrand = [=](double t) {
                return std::polar(0.5, phase_scale * std::sin(doa + spread * t));
            };
            lower[k] = quadrature::integrate_doubling(integrand, -1.0, 1.0, opt).value;
        }
        return CorrelationMatrix(hermitian_toeplitz(lower));
    }

    CorrelationMatrix build_correlation(Eigen::Index m, const TerminalCorrelation &params)
    {
        switch (params.variant)
        {
        case CorrelationModel::Exponential:
            return build_exponential(m, params.xi);
        case CorrelationModel::Clerckx:
            return build_clerckx(m, params.xi, params.phase_deg);
        case CorrelationModel::OneRing:
            return build_one_ring(m, params.angular_spread_deg, params.mean_doa_deg,
                                  params.element_spacing_wavelengths);
        }
        throw InvalidParameter("unknown correlation model");
    }

    CorrelationFactor factor(const CorrelationMatrix &r)
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(r.matrix());
        if (solver.info() != Eigen::Success)
            throw IndefiniteMatrix("eigendecomposition of correlation matrix failed");

        Eigen::VectorXd lambda = solver.eigenvalues();
        if (lambda.minCoeff() < -kPsdRepairTolerance)
            throw IndefiniteMatrix("correlation matrix is indefinite: smallest eigenvalue " +
                                   std::to_string(lambda.minCoeff()));
        lambda = lambda.cwiseMax(0.0).cwiseSqrt();
        return CorrelationFactor(solver.eigenvectors() * lambda.asDiagonal());
    }

    AverageCorrelation average_correlation(std::span<const CorrelationMatrix> rs)
    {
        if (rs.empty())
            throw InvalidParameter("average_correlation needs at least one matrix");
        const auto m = rs.front().order();

        Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(m, m);
        for (const auto &r : rs)
        {
            if (r.order() != m)
                throw DimensionMismatch("all correlation matrices must share the same order");
            mean += r.matrix();
        }
        mean /= static_cast<double>(rs.size());

        const double direct = (mean * mean).trace().real();

        double off_diagonal = 0.0;
        for (Eigen::Index j = 0; j < m; ++j)
            for (Eigen::Index i = j + 1; i < m; ++i)
                off_diagonal += std::norm(mean(i, j));
        const double identity = static_cast<double>(m) + 2.0 * off_diagonal;

        if (std::abs(direct - identity) > 1e-9 * std::abs(identity))
            throw Error("Tr[Rbar^2] routes disagree: product " + std::to_string(direct) + " vs identity " +
                        std::to_string(identity));

        return {std::move(mean), direct, identity};
    }
}
