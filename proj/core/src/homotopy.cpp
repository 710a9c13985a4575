#include "tether/homotopy.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <sstream>

namespace tether {

bool signature_less(const Signature& a, const Signature& b) {
  if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
  for (std::size_t i = 0; i < a.word.size(); ++i) {
    const int ta = a.word[i], tb = b.word[i];
    const auto ka = std::make_pair(std::abs(ta), ta < 0);
    const auto kb = std::make_pair(std::abs(tb), tb < 0);
    if (ka != kb) return ka < kb;
  }
  return false;
}

Signature reduce(const std::vector<int>& raw_word, int num_generators) {
  Signature out;
  out.word.reserve(raw_word.size());
  for (int t : raw_word) {
    if (t == 0 || (num_generators >= 0 && std::abs(t) > num_generators)) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "generator index " + std::to_string(t) + " out of range");
    }
    if (!out.word.empty() && out.word.back() == -t) {
      out.word.pop_back();
    } else {
      out.word.push_back(t);
    }
  }
  return out;
}

Signature concat(const Signature& s1, const Signature& s2) {
  Signature out = s1;
  for (int t : s2.word) {
    if (!out.word.empty() && out.word.back() == -t) {
      out.word.pop_back();
    } else {
      out.word.push_back(t);
    }
  }
  return out;
}

Signature invert(const Signature& s) {
  Signature out;
  out.word.reserve(s.word.size());
  for (auto it = s.word.rbegin(); it != s.word.rend(); ++it) out.word.push_back(-*it);
  return out;
}

std::string to_string(const Signature& s) {
  std::string out;
  for (std::size_t i = 0; i < s.word.size(); ++i) {
    if (i) out += ' ';
    const int t = s.word[i];
    out += 's' + std::to_string(std::abs(t));
    if (t < 0) out += "^-1";
  }
  return out;
}

Signature signature_from_string(const std::string& text, int num_generators) {
  std::vector<int> word;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "-") continue;
    bool inverse = false;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      inverse = true;
      tok = tok.substr(0, tok.size() - 3);
    }
    if (tok.size() < 2 || tok[0] != 's') {
      throw Error(ErrorCode::kParseError, "bad signature token '" + tok + "'");
    }
    int idx = 0;
    try {
      idx = std::stoi(tok.substr(1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParseError, "bad signature token '" + tok + "'");
    }
    word.push_back(inverse ? -idx : idx);
  }
  return reduce(word, num_generators);
}

namespace {

struct Crossing {
  double t;   // parameter along the path segment
  int order;  // generator index for deterministic tie-break
  int token;
};

// Transversal crossing of segment (a, b) with the clipped ray of gen.
// Path mode (half_open = false): endpoints are guaranteed off the ray by the
// perturbation pass, so on-line endpoints mean the contact is off the ray
// portion and contribute nothing.
// Grid mode (half_open = true): cell centers and corners can sit exactly on
// the ray line, so on-line points are assigned to the left half-plane; a
// crossing through such a point is counted exactly once, on the move that
// leaves the line.
std::optional<Crossing> segment_ray_crossing(const Point& a, const Point& b, const Generator& gen,
                                             int index, bool half_open) {
  const Point& o = gen.origin;
  const Point& e = gen.clip_end;
  int sa = orient_sign(o, e, a);
  int sb = orient_sign(o, e, b);
  if (half_open && (sa == 0 || sb == 0)) {
    const bool a_on = sa == 0;
    const bool b_on = sb == 0;
    if (a_on) sa = 1;
    if (b_on) sb = 1;
    if (sa == sb) return std::nullopt;
    const Point& touch = a_on ? a : b;
    if (!on_segment(touch, gen.clipped())) return std::nullopt;
    return Crossing{a_on ? 0.0 : 1.0, index, sa > 0 ? index + 1 : -(index + 1)};
  }
  if (sa == 0 || sb == 0 || sa == sb) return std::nullopt;
  const int so = orient_sign(a, b, o);
  const int se = orient_sign(a, b, e);
  if (so == 0 || se == 0 || so == se) return std::nullopt;
  const Point ray_dir = e - o;
  const double denom = cross(b - a, ray_dir);
  const double t = cross(o - a, ray_dir) / denom;
  return Crossing{t, index, sa > 0 ? index + 1 : -(index + 1)};
}

void append_crossings(const Point& a, const Point& b, const std::vector<Generator>& generators,
                      bool half_open, std::vector<int>& out_word) {
  std::vector<Crossing> hits;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (auto c = segment_ray_crossing(a, b, generators[g], static_cast<int>(g), half_open)) {
      hits.push_back(*c);
    }
  }
  std::sort(hits.begin(), hits.end(), [](const Crossing& x, const Crossing& y) {
    return std::tie(x.t, x.order) < std::tie(y.t, y.order);
  });
  for (const Crossing& c : hits) out_word.push_back(c.token);
}

bool vertex_on_any_ray(const Point& v, const std::vector<Generator>& generators) {
  for (const Generator& g : generators) {
    if (on_segment(v, g.clipped())) return true;
  }
  return false;
}

}  // namespace

void append_segment_crossings(const Point& a, const Point& b,
                              const std::vector<Generator>& generators,
                              std::vector<int>& out_word) {
  append_crossings(a, b, generators, /*half_open=*/true, out_word);
}

Signature signature_of_path(const Polyline& path, const std::vector<Generator>& generators) {
  if (path.size() < 2) return {};

  const Polyline* effective = &path;
  Polyline perturbed;
  bool needs_fix = false;
  for (const Point& v : path) {
    if (vertex_on_any_ray(v, generators)) {
      needs_fix = true;
      break;
    }
  }
  if (needs_fix) {
    perturbed = path;
    for (std::size_t i = 0; i < perturbed.size(); ++i) {
      if (!vertex_on_any_ray(perturbed[i], generators)) continue;
      // Slide along an incident segment: stays on the original polyline.
      const std::size_t other = (i > 0) ? i - 1 : i + 1;
      const Point dir = perturbed[other] - perturbed[i];
      const double len = norm(dir);
      if (len == 0.0) continue;
      const double step = std::min(10.0 * kSnapEps, len / 2.0);
      perturbed[i] = perturbed[i] + dir * (step / len);
    }
    for (const Point& v : perturbed) {
      if (vertex_on_any_ray(v, generators)) {
        throw Error(ErrorCode::kVertexOnGenerator, "path vertex on generator ray after perturbation");
      }
    }
    effective = &perturbed;
  }

  std::vector<int> word;
  for (std::size_t i = 1; i < effective->size(); ++i) {
    append_crossings((*effective)[i - 1], (*effective)[i], generators, /*half_open=*/false,
                     word);
  }
  return reduce(word, static_cast<int>(generators.size()));
}

}  // namespace tether
