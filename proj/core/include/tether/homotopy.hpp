#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "tether/environment.hpp"
#include "tether/geometry.hpp"

namespace tether {

// Element of the free group over the m generators, stored as a reduced word
// of signed 1-based generator indices: +i is one left-to-right crossing of
// ray sigma_i, -i its inverse. The empty word is the identity class.
struct Signature {
  std::vector<int> word;

  bool empty() const { return word.empty(); }
  std::size_t size() const { return word.size(); }
  friend bool operator==(const Signature& a, const Signature& b) { return a.word == b.word; }
  friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }
};

// Canonical ordering: shorter word first, then tokens compared by absolute
// index with the positive power preceding the negative one.
bool signature_less(const Signature& a, const Signature& b);

struct SignatureHash {
  std::size_t operator()(const Signature& s) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int t : s.word) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(t));
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

// Cancels every adjacent (+i, -i) pair until none remain.
// num_generators < 0 skips the index range check.
Signature reduce(const std::vector<int>& raw_word, int num_generators = -1);

// Group operation: reduce(s1 . s2).
Signature concat(const Signature& s1, const Signature& s2);

// Reversed word with flipped signs; concat(s, invert(s)) is the identity.
Signature invert(const Signature& s);

// Canonical text rendering: "" for the identity, otherwise e.g. "s1 s3^-1 s2".
std::string to_string(const Signature& s);
// Inverse of to_string; accepts "" and the "-" placeholder for the identity.
Signature signature_from_string(const std::string& text, int num_generators = -1);

// Word of transversal generator-ray crossings in path order, reduced.
// A crossing from the ray's left half-plane to its right contributes +i.
// Path vertices that lie exactly on a ray are slid 10*eps along an incident
// segment first; if that fails to clear the rays, kVertexOnGenerator.
Signature signature_of_path(const Polyline& path, const std::vector<Generator>& generators);

// Crossing tokens of a single segment in crossing order, for grid-graph
// moves: points exactly on a ray line count as left half-plane, so chains of
// moves through on-line cell centers cross exactly once.
void append_segment_crossings(const Point& a, const Point& b,
                              const std::vector<Generator>& generators,
                              std::vector<int>& out_word);

}  // namespace tether
