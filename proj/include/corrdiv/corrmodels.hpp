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

#ifndef CORRDIV_CORRMODELS_HPP
#define CORRDIV_CORRMODELS_HPP

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <span>
#include <string_view>

namespace corrdiv
{
    // Eigenvalues in [-kPsdRepairTolerance, 0) are floating-point noise and get clamped to zero;
    // anything lower is a construction bug and is reported as IndefiniteMatrix.
    inline constexpr double kPsdRepairTolerance = 1e-10;

    // M x M transmit-side spatial correlation matrix of one terminal.
    // Invariants (checked on construction): Hermitian and unit diagonal exactly,
    // off-diagonal magnitudes <= 1, smallest eigenvalue >= -kPsdRepairTolerance.
    class CorrelationMatrix
    {
    public:
        // Throws InvalidParameter or IndefiniteMatrix when an invariant does not hold.
        explicit CorrelationMatrix(Eigen::MatrixXcd entries);

        Eigen::Index order() const { return entries_.rows(); }
        const Eigen::MatrixXcd &matrix() const { return entries_; }
        std::complex<double> operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }
        double min_eigenvalue() const { return min_eigenvalue_; }

    private:
        Eigen::MatrixXcd entries_;
        double min_eigenvalue_;
    };

    // Sampling square root B with B * B^H == R.
    class CorrelationFactor
    {
    public:
        explicit CorrelationFactor(Eigen::MatrixXcd b) : b_(std::move(b)) {}

        Eigen::Index order() const { return b_.rows(); }
        const Eigen::MatrixXcd &matrix() const { return b_; }

        // max |(B B^H - R)_ij|
        double reconstruction_error(const CorrelationMatrix &r) const;

    private:
        Eigen::MatrixXcd b_;
    };

    enum class CorrelationModel
    {
        Exponential,
        Clerckx,
        OneRing,
    };

    std::string_view to_string(CorrelationModel model);

    struct PhaseRange
    {
        double low_deg = 0.0;
        double high_deg = 0.0;

        bool operator==(const PhaseRange &) const = default;
    };

    // Model choice plus its parameters as configured for a whole scenario.
    // For the one-ring model an empty angular_spread_deg means "draw from the measured spread
    // distribution" and an empty mean_doa_deg means "draw uniformly from the measured DOA range".
    struct CorrelationModelSpec
    {
        CorrelationModel variant = CorrelationModel::Exponential;
        double xi = 0.0;
        PhaseRange phase_range_deg{};
        std::optional<double> angular_spread_deg;
        std::optional<double> mean_doa_deg;
        double element_spacing_wavelengths = 0.5;

        void validate() const;

        bool operator==(const CorrelationModelSpec &) const = default;
    };

    // One terminal's correlation parameters after all random draws are resolved.
    struct TerminalCorrelation
    {
        CorrelationModel variant = CorrelationModel::Exponential;
        double xi = 0.0;
        double phase_deg = 0.0;
        double angular_spread_deg = 0.0;
        double mean_doa_deg = 0.0;
        double element_spacing_wavelengths = 0.5;

        bool operator==(const TerminalCorrelation &) const = default;
    };

    // [R]_ij = xi^|i-j|
    CorrelationMatrix build_exponential(Eigen::Index m, double xi);

    // Hermitian Toeplitz reading of the Clerckx model:
    // [R]_ij = (xi e^{j phase})^(j-i) for j >= i, conjugate mirror below the diagonal.
    CorrelationMatrix build_clerckx(Eigen::Index m, double xi, double phase_deg);

    // One-ring kernel for a uniform linear array with element spacing `spacing_wavelengths`:
    //   [R]_ij = 1/(2 D) * integral_{phi0-D}^{phi0+D} exp(-j 2 pi s (i-j) sin(phi)) dphi
    // evaluated per lag by Gauss-Legendre doubling (32 -> 4096 nodes, 1e-10 relative agreement).
    CorrelationMatrix build_one_ring(Eigen::Index m, double angular_spread_deg, double mean_doa_deg,
                                     double spacing_wavelengths = 0.5);

    CorrelationMatrix build_correlation(Eigen::Index m, const TerminalCorrelation &params);

    // Eigen-factorization B = V diag(sqrt(max(lambda, 0))).
    CorrelationFactor factor(const CorrelationMatrix &r);

    struct AverageCorrelation
    {
        Eigen::MatrixXcd mean;
        double trace_sq;          // Tr[Rbar^2] from the matrix product
        double trace_sq_identity; // M + 2 sum_{i<j} |rbar_ij|^2
    };

    // Entrywise mean over terminals and Tr[Rbar^2] by two independent routes, which must
    // agree to 1e-9 relative.
    AverageCorrelation average_correlation(std::span<const CorrelationMatrix> rs);
}

#endif
