#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pchord/graph.hpp"
#include "pchord/hierarchy.hpp"

namespace pchord {

/// Canonical token string of a decorated hierarchy: per node the minimal
/// serialization over its eligible child permutations. Token order is
/// L < F < P < Q < integers (compared numerically); label delimiters are
/// ignored by the comparator.
struct IsoCode {
  struct Token {
    enum class Kind { L, F, P, Q, Int, Open, Close };
    Kind kind;
    int value = 0;  // for Int

    bool operator==(const Token&) const = default;
  };

  std::vector<Token> tokens;

  std::string render() const;
  static IsoCode from_string(const std::string& text);

  /// Three-way comparison: negative, zero, positive.
  static int compare(const IsoCode& a, const IsoCode& b);
  bool operator==(const IsoCode& other) const { return tokens == other.tokens; }
  bool operator<(const IsoCode& other) const {
    return compare(*this, other) < 0;
  }
};

/// Canonical code; requires a_hat on every skeleton edge.
IsoCode code_of(const FpqHierarchy& h);

/// Code variant without the a_hat component of labels.
IsoCode code_of_undecorated(const FpqHierarchy& h);

bool hierarchies_equivalent(const FpqHierarchy& h1, const FpqHierarchy& h2);
bool hierarchies_equivalent_undecorated(const FpqHierarchy& h1,
                                        const FpqHierarchy& h2);

/// Reconstructs the representative hierarchy shape of a code (leaf elements
/// assigned 0,1,2,... in serialization order). code_of(parse_code(c)) == c.
FpqHierarchy parse_code(const IsoCode& c);

/// Polynomial isomorphism test for connected proper chordal graphs: fixes
/// one feasible root of g1 and sweeps the feasible roots of g2 comparing
/// codes; on a match the bijection is read off the aligned canonical leaf
/// orders and verified edge by edge. Throws when an input is not proper
/// chordal.
std::optional<std::vector<int>> isomorphic(const Graph& g1, const Graph& g2);

}  // namespace pchord
