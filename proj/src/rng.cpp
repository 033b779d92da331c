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

#include "corrdiv/rng.hpp"

namespace corrdiv
{
    namespace
    {
        constexpr std::uint32_t kMulA = 0xD2511F53u;
        constexpr std::uint32_t kMulB = 0xCD9E8D57u;
        constexpr std::uint32_t kWeylA = 0x9E3779B9u;
        constexpr std::uint32_t kWeylB = 0xBB67AE85u;

        inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo)
        {
            const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
            hi = static_cast<std::uint32_t>(product >> 32);
            lo = static_cast<std::uint32_t>(product);
        }
    }

    Philox4x32::Block Philox4x32::bijection(Block ctr, Key key)
    {
        for (int round = 0; round < 10; ++round)
        {
            if (round > 0)
            {
                key[0] += kWeylA;
                key[1] += kWeylB;
            }
            std::uint32_t hi0, lo0, hi1, lo1;
            mulhilo(kMulA, ctr[0], hi0, lo0);
            mulhilo(kMulB, ctr[2], hi1, lo1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }
}
