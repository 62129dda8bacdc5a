//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 the cwscat developers.
// SPDX-License-Identifier: Apache-2.0
//----------------------------------------------------------------------------//
//! \file cwscat/errors.hpp
//! \brief Error taxonomy shared across the library and the scan runner.
//!
//! ScenarioError marks invalid parameter sets or malformed configuration
//! (process exit code 1); RegimeError marks structurally valid inputs that
//! fall outside a routine's supported numerical regime (exit code 2).
//! Plain std::runtime_error is reserved for I/O failures (exit code 3).
//----------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <string>

namespace cwscat
{

//! Invalid parameter combination, config syntax error, or bad CLI usage.
class ScenarioError : public std::invalid_argument
{
  public:
    explicit ScenarioError(std::string const& what)
        : std::invalid_argument(what)
    {
    }
};

//! Valid-looking input outside the supported numerical regime of a routine.
class RegimeError : public std::domain_error
{
  public:
    explicit RegimeError(std::string const& what) : std::domain_error(what) {}
};

}  // namespace cwscat
