#pragma once

#include <cstdint>
#include <string>

namespace kpaths {

struct RandomGraphSpec {
  std::uint32_t vertices = 0;
  double edge_prob = 0.0;
  std::int64_t wmin = 1;
  std::int64_t wmax = 10;
  std::uint64_t seed = 0;
};

struct LayeredGraphSpec {
  std::uint32_t layers = 0;
  std::uint32_t width = 0;
  std::int64_t wmin = 1;
  std::int64_t wmax = 10;
  std::uint64_t seed = 0;
};

/// Random DAG over vertices n0..n{N-1}: each forward pair (i < j) becomes an
/// edge with probability edge_prob, weight uniform in [wmin, wmax].
/// Byte-identical output for equal specs.
std::string generate_random(const RandomGraphSpec& spec);

/// Layered DAG: a single root layer L0 of width 1, then layers-1 layers of
/// the given width, complete bipartite between consecutive layers. Path
/// count is width^(layers-1), every path has layers-1 edges.
/// Byte-identical output for equal specs.
std::string generate_layered(const LayeredGraphSpec& spec);

}  // namespace kpaths
