#include "stlsmooth/error.hpp"
#include "stlsmooth/synthesis.hpp"

namespace stlsmooth {
namespace {

// Composite sample layout for the 2-D single integrator: y (0,1), x (2,3),
// u (4,5). Spatial predicates read the output channels.
constexpr std::size_t kQ = 6;
constexpr std::size_t kPx = 0, kPy = 1, kU0 = 4, kU1 = 5;

struct Box {
  const char* name;
  double xlo, xhi, ylo, yhi;
};

struct Window {
  int t1, t2;
};

struct Layout {
  double x0, y0;
  std::vector<Box> obstacles;
  std::vector<Box> targets;
  std::vector<Window> windows;
};

// Invented stand-ins for the benchmark figures: axis-aligned rectangles in
// [0,10]^2 with the same formula structure.
Layout layout(int id) {
  switch (id) {
    case 1:
      return {1.0, 1.0, {{"obs1", 3.5, 6.5, 3.0, 6.5}}, {{"tar1", 7.5, 9.5, 7.5, 9.5}}, {{0, 20}}};
    case 2:
      return {1.0, 1.0,
              {{"obs1", 4.0, 6.0, 0.0, 4.5}, {"obs2", 4.0, 6.0, 5.5, 10.0}},
              {{"tar1", 7.5, 9.5, 7.5, 9.5}},
              {{0, 20}}};
    case 3:
    case 4:
      return {1.0, 1.0,
              {{"obs1", 3.5, 5.5, 1.5, 4.0}, {"obs2", 6.0, 9.5, 4.5, 6.0}},
              {{"tar1", 1.5, 3.5, 5.0, 7.0}, {"tar2", 6.0, 8.0, 7.5, 9.5}, {"tar3", 7.0, 9.0, 1.0, 3.0}},
              {{0, 6}, {6, 12}, {id == 3 ? 14 : 12, 20}}};
    default:
      throw ConfigError("benchmark problems are numbered 1 to 4");
  }
}

}  // namespace

SynthesisProblem build_scp(int id, double noise) {
  if (!(noise >= 0.0)) throw ConfigError("noise must be non-negative");
  const Layout lay = layout(id);
  const Interval w{-noise, noise};
  PredicateTable table(kQ);

  std::vector<Formula> avoid;
  for (const Box& b : lay.obstacles) {
    avoid.push_back(to_nnf(Formula::negate(table.add_box(b.name, kPx, kPy, b.xlo, b.xhi, b.ylo, b.yhi, w))));
  }
  Formula phi_o = Formula::always(0, 20, avoid.size() == 1 ? avoid[0] : Formula::conj(avoid));
  Formula phi_u = Formula::always(0, 20, table.add_box("ubox", kU0, kU1, -1.0, 1.0, -1.0, 1.0, w));

  std::vector<Formula> reach;
  for (std::size_t i = 0; i < lay.targets.size(); ++i) {
    const Box& b = lay.targets[i];
    reach.push_back(Formula::eventually(lay.windows[i].t1, lay.windows[i].t2,
                                        table.add_box(b.name, kPx, kPy, b.xlo, b.xhi, b.ylo, b.yhi, w)));
  }
  Formula goal = reach.size() == 1 ? reach[0] : Formula::conj(reach);

  Vec x0(2);
  x0 << lay.x0, lay.y0;
  SynthesisProblem prob{"SCP" + std::to_string(id), single_integrator_2d(1.0), x0, 20,
                        Formula::conj({phi_o, phi_u, goal})};
  prob.control_penalty = 0.01;
  prob.smooth.noise_enabled = noise > 0.0;
  prob.range_bound = 20.0;
  prob.validate();
  return prob;
}

}  // namespace stlsmooth
