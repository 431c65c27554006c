#include "kpaths/generate.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace kpaths {

namespace {

/// Draws are reduced by modulo so the byte stream depends only on the seed
/// and the draw sequence, never on distribution internals.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  std::int64_t weight(std::int64_t lo, std::int64_t hi) {
    std::uint64_t span = std::uint64_t(hi) - std::uint64_t(lo) + 1;
    std::uint64_t r = span == 0 ? rng_() : rng_() % span;
    return std::int64_t(std::uint64_t(lo) + r);
  }

  bool chance(std::uint64_t threshold_of_1e9) {
    return rng_() % 1'000'000'000 < threshold_of_1e9;
  }

 private:
  std::mt19937_64 rng_;
};

void check_weights(std::int64_t wmin, std::int64_t wmax) {
  if (wmin > wmax) throw std::invalid_argument("weight range is empty");
}

}  // namespace

std::string generate_random(const RandomGraphSpec& spec) {
  check_weights(spec.wmin, spec.wmax);
  if (!(spec.edge_prob >= 0.0 && spec.edge_prob <= 1.0))
    throw std::invalid_argument("edge probability must be between 0 and 1");

  std::ostringstream out;
  out << "# random DAG: vertices=" << spec.vertices
      << " edge-prob=" << spec.edge_prob << " weights=[" << spec.wmin << ","
      << spec.wmax << "] seed=" << spec.seed << "\n";

  Draw draw(spec.seed);
  std::uint64_t threshold = std::uint64_t(std::llround(spec.edge_prob * 1e9));
  for (std::uint32_t i = 0; i < spec.vertices; ++i)
    for (std::uint32_t j = i + 1; j < spec.vertices; ++j)
      if (draw.chance(threshold))
        out << 'n' << i << " n" << j << ' ' << draw.weight(spec.wmin, spec.wmax)
            << '\n';
  return out.str();
}

std::string generate_layered(const LayeredGraphSpec& spec) {
  check_weights(spec.wmin, spec.wmax);
  if (spec.layers < 1) throw std::invalid_argument("need at least one layer");
  if (spec.width < 1) throw std::invalid_argument("width must be positive");

  std::ostringstream out;
  out << "# layered DAG: layers=" << spec.layers << " width=" << spec.width
      << " weights=[" << spec.wmin << "," << spec.wmax << "] seed=" << spec.seed
      << "\n";

  Draw draw(spec.seed);
  auto width_of = [&spec](std::uint32_t layer) {
    return layer == 0 ? 1u : spec.width;
  };
  for (std::uint32_t layer = 0; layer + 1 < spec.layers; ++layer)
    for (std::uint32_t a = 0; a < width_of(layer); ++a)
      for (std::uint32_t b = 0; b < width_of(layer + 1); ++b)
        out << 'L' << layer << '_' << a << " L" << layer + 1 << '_' << b << ' '
            << draw.weight(spec.wmin, spec.wmax) << '\n';
  return out.str();
}

}  // namespace kpaths
