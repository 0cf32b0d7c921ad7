// Copyright 2026 The solgraph Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOLGRAPH_ERRORS_HPP
#define SOLGRAPH_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace solgraph {

/// Base class for all solgraph errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input: cycle notation, group specs, generator files,
/// verification plans. Carries a byte offset when one is known.
class parse_error : public error {
 public:
  parse_error(const std::string& what, std::size_t position)
      : error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  explicit parse_error(const std::string& what) : error(what), position_(0) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Two permutations with different degrees were combined.
class degree_mismatch : public error {
 public:
  using error::error;
};

/// An element was passed to an operation on a group it does not belong to,
/// or a claimed subgroup relation does not hold.
class membership_error : public error {
 public:
  using error::error;
};

/// A configured work limit was exceeded (element enumeration, pair-solubility
/// tests, canonical-search nodes).
class budget_exceeded : public error {
 public:
  using error::error;
};

/// A computation was requested that the group's tier does not support
/// (e.g. full solubilizer member sets for an invariant-only group).
class tier_violation : public error {
 public:
  using error::error;
};

/// The solubility graph of a soluble group was requested; it has no vertices.
class soluble_group_error : public error {
 public:
  using error::error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace solgraph

#endif  // SOLGRAPH_ERRORS_HPP
