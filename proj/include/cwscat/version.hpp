//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 the cwscat developers.
// SPDX-License-Identifier: Apache-2.0
//----------------------------------------------------------------------------//
//! \file cwscat/version.hpp
//! \brief Library version constant recorded in output metadata.
//----------------------------------------------------------------------------//
#pragma once

namespace cwscat
{

inline constexpr char version_string[] = "1.0.0";

}  // namespace cwscat
