// SPDX-License-Identifier: Apache-2.0
//
// ialab - interference alignment simulation library
// Copyright (C) 2026 The ialab authors
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

#ifndef IALAB_ERRORS_HPP
#define IALAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ialab
{

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Invalid argument values (bounds, counts, orders).
class ParameterError : public Error
{
public:
    using Error::Error;
};

// Matrix or extension dimensions that do not fit together.
class ShapeError : public Error
{
public:
    using Error::Error;
};

class InsufficientSlotsError : public Error
{
public:
    using Error::Error;
};

// A channel block could not be inverted.
class SingularityError : public Error
{
public:
    using Error::Error;
};

// An eigenbasis is deficient or not unique.
class DegeneracyError : public Error
{
public:
    using Error::Error;
};

// Requested construction exceeds the configured size cap.
class SizeError : public Error
{
public:
    using Error::Error;
};

// Malformed input file; the message carries line/field context.
class ParseError : public Error
{
public:
    using Error::Error;
};

// A scheme failed its alignment or rank checks.
class AlignmentError : public Error
{
public:
    using Error::Error;
};

// DoF point outside the 3-user region.
class MembershipError : public Error
{
public:
    using Error::Error;
};

class InsufficientDataError : public Error
{
public:
    using Error::Error;
};

class PreconditionError : public Error
{
public:
    using Error::Error;
};

} // namespace ialab

#endif
