#include <doctest.h>

#include <cmath>
#include <memory>

#include "kplane/flow.hpp"
#include "kplane/mc_oracle.hpp"
#include "kplane/operators.hpp"
#include "kplane/random.hpp"

using namespace kplane;

namespace {
std::shared_ptr<const AxiGrid> grid() {
  return std::make_shared<const AxiGrid>(AxiGrid::sinh_spaced(128, 128, 1e5, 1.0));
}

void same(std::span<const double> a, std::span<const double> b) {
  REQUIRE(a.size() == b.size());
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += a[i] != b[i];
  CHECK(diff == 0);
}
}  // namespace

TEST_CASE("parallel paths reproduce the serial reference bit for bit") {
  INFO("threads: " << max_threads());
  const TransformParams params(1, 3);
  const RadialProfile f = preset_profile("gaussian", params);
  const auto g = grid();

  same(t_transform(f, params, Exec::serial).values(), t_transform(f, params, Exec::parallel).values());
  same(embed_radial(f, g, Exec::serial).values(), embed_radial(f, g, Exec::parallel).values());
  same(s_symmetry_radial(f, g, params, Exec::serial, 2).values(),
       s_symmetry_radial(f, g, params, Exec::parallel, 2).values());

  CounterRng rng(91, 0);
  const AxiSymField field = random_field(rng, 3, g, 2.0);
  same(s_symmetry(field, params, Exec::serial).field.values(),
       s_symmetry(field, params, Exec::parallel).field.values());
  for (int sub : {1, 3}) {
    same(rearrange(field, default_radial_grid(), 0.0, Interp::log_pchip, Exec::serial, sub).values(),
         rearrange(field, default_radial_grid(), 0.0, Interp::log_pchip, Exec::parallel, sub).values());
  }
  CHECK(functional_ratio(f, params, Exec::serial) == functional_ratio(f, params, Exec::parallel));
}

TEST_CASE("Monte Carlo does not depend on the thread count") {
  const PointFunction h = [](std::span<const double> x) {
    double s = 1.0;
    for (double v : x) s += v * v;
    return 1.0 / s;
  };
  const MCEstimate a = drury_norm_mc(h, TransformParams(1, 2), 5000, 4, Exec::serial);
  const MCEstimate b = drury_norm_mc(h, TransformParams(1, 2), 5000, 4, Exec::parallel);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  CHECK(radon2d_direct(h, 3.0, 8, 1e-9, Exec::serial) == radon2d_direct(h, 3.0, 8, 1e-9, Exec::parallel));
}
