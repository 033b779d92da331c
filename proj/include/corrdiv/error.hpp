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

#ifndef CORRDIV_ERROR_HPP
#define CORRDIV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace corrdiv
{
    // Base class for every error raised by the library.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class InvalidParameter : public Error
    {
    public:
        using Error::Error;
    };

    class DimensionMismatch : public Error
    {
    public:
        using Error::Error;
    };

    // Smallest eigenvalue below the PSD repair threshold.
    class IndefiniteMatrix : public Error
    {
    public:
        using Error::Error;
    };

    class QuadratureNonconvergence : public Error
    {
    public:
        using Error::Error;
    };

    // Gram matrix HH^H is singular or its condition estimate exceeds the limit.
    class IllConditionedChannel : public Error
    {
    public:
        using Error::Error;
    };

    class CalibrationNonconvergence : public Error
    {
    public:
        using Error::Error;
    };

    // A drop exceeded its rejected-trial budget, or a run lost too many drops.
    class RunFailure : public Error
    {
    public:
        using Error::Error;
    };

    class IncompatibleScenarios : public Error
    {
    public:
        using Error::Error;
    };

    // Scenario-file diagnostics carry the source path, line (1-based, 0 if unknown) and key path.
    class ParseError : public Error
    {
    public:
        ParseError(const std::string &source, int line, const std::string &key, const std::string &what)
            : Error(format(source, line, key, what)), line_(line), key_(key) {}

        int line() const noexcept { return line_; }
        const std::string &key() const noexcept { return key_; }

    private:
        static std::string format(const std::string &source, int line, const std::string &key, const std::string &what)
        {
            std::string msg = source;
            if (line > 0)
                msg += ":" + std::to_string(line);
            if (!key.empty())
                msg += ": " + key;
            return msg + ": " + what;
        }

        int line_;
        std::string key_;
    };
}

#endif
