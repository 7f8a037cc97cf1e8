// SPDX-License-Identifier: Apache-2.0
//
// bdris: capacity-optimal beyond-diagonal RIS configuration for MIMO links
// Copyright (C) 2026 The bdris authors
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

#ifndef BDRIS_ERRORS_HPP
#define BDRIS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bdris
{

// All library errors derive from bdris::error so callers can catch them in one place.
class error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class invalid_argument : public error
{
  public:
    using error::error;
};

// A ReflectionMatrix was built from a matrix outside the feasible set.
class contract_violation : public error
{
  public:
    using error::error;
};

class degenerate_input : public error
{
  public:
    using error::error;
};

// Waterfilling was asked to allocate power with no positive gain.
class no_usable_stream : public error
{
  public:
    using error::error;
};

class invalid_covariance : public error
{
  public:
    using error::error;
};

class numerical_error : public error
{
  public:
    using error::error;
};

// Semi-unitary equivalence only holds for M <= max(N_r, N_t).
class out_of_regime : public error
{
  public:
    using error::error;
};

class config_error : public error
{
  public:
    using error::error;
};

} // namespace bdris

#endif // BDRIS_ERRORS_HPP
