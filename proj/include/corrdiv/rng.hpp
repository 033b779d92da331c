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

#ifndef CORRDIV_RNG_HPP
#define CORRDIV_RNG_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>

namespace corrdiv
{
    // Counter-based Philox4x32-10 generator (Salmon et al., SC'11).
    // Counter word 0 is the block index within the stream; words 1..3 identify the stream.
    // Satisfies UniformRandomBitGenerator, so it plugs into <random> distributions.
    class Philox4x32
    {
    public:
        using result_type = std::uint32_t;
        using Block = std::array<std::uint32_t, 4>;
        using Key = std::array<std::uint32_t, 2>;

        Philox4x32(std::uint64_t seed, std::uint32_t w1, std::uint32_t w2, std::uint32_t w3)
            : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
              stream_{w1, w2, w3} {}

        static constexpr result_type min() { return 0; }
        static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

        result_type operator()()
        {
            if (used_ == 4)
            {
                buffer_ = bijection({block_index_++, stream_[0], stream_[1], stream_[2]}, key_);
                used_ = 0;
            }
            return buffer_[used_++];
        }

        // The keyed bijection itself; exposed for known-answer tests.
        static Block bijection(Block counter, Key key);

    private:
        Key key_;
        std::array<std::uint32_t, 3> stream_;
        std::uint32_t block_index_ = 0;
        Block buffer_{};
        unsigned used_ = 4;
    };

    // Purpose tags keep the draws of different model components on disjoint streams.
    enum class StreamPurpose : std::uint32_t
    {
        Geometry = 1,
        Shadowing = 2,
        ModelParameters = 3,
        Fading = 4,
        Auxiliary = 15,
    };

    // Stream for (seed, purpose, drop, trial, attempt). Attempt counts resamples of a rejected trial.
    inline Philox4x32 make_stream(std::uint64_t seed, StreamPurpose purpose, std::uint32_t drop,
                                  std::uint32_t trial = 0, std::uint32_t attempt = 0)
    {
        const auto tag = (static_cast<std::uint32_t>(purpose) << 24) | (attempt & 0x00FFFFFFu);
        return Philox4x32(seed, trial, drop, tag);
    }

    // Circularly-symmetric CN(0, 1) sampler.
    class ComplexNormal
    {
    public:
        template <class Gen>
        std::complex<double> operator()(Gen &gen)
        {
            const double re = normal_(gen);
            const double im = normal_(gen);
            return {re * M_SQRT1_2, im * M_SQRT1_2};
        }

    private:
        std::normal_distribution<double> normal_{0.0, 1.0};
    };
}

#endif
