// Copyright 2026 The Condensedly Authors
//
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

// Boolean query language.
//
//   query   := or
//   or      := and ("OR" and)*
//   and     := unary (["AND"] unary)*        adjacency is an implicit AND
//   unary   := "NOT" unary | primary
//   primary := "(" or ")" | "pmid:" DIGITS | WORD
//
// Operators are recognized in uppercase only. Words go through the
// keyword pipeline; a word that normalizes to nothing (a stopword) drops
// out of the expression, and a word that yields several keywords becomes
// their conjunction. A query must contain a positive conjunct: NOT is
// only executable as a difference inside an AND.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace condensedly::search {

struct Query {
  enum class Kind { kTerm, kAnd, kOr, kNot, kPmid };

  Kind kind = Kind::kTerm;
  std::string value;            // term stem or PMID digits
  std::vector<Query> children;  // two for And/Or, one for Not

  static Query Term(std::string stem);
  static Query Pmid(std::string digits);
  static Query And(Query left, Query right);
  static Query Or(Query left, Query right);
  static Query Not(Query operand);

  friend bool operator==(const Query&, const Query&) = default;
};

// Compact form such as "Or(And(p53,cancer),mous)" or "Pmid(123)".
std::string to_string(const Query& q);

class QueryError : public std::runtime_error {
 public:
  enum class Kind { kSyntaxError, kPureNegation };

  QueryError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// True when the expression can be evaluated without the complement of the
// corpus: terms and PMIDs are positive, AND needs one positive side, OR
// needs both.
bool is_positive(const Query& q);

Query parse_query(std::string_view text);

}  // namespace condensedly::search
