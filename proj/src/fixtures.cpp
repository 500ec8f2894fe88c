// SPDX-License-Identifier: Apache-2.0
#include "lmlab/document.hpp"

namespace lmlab {

const std::vector<Fixture>& bundled_fixtures() {
  static const std::vector<Fixture> fixtures = {
      {"jacobi_example.json", R"json({
  "version": 1,
  "description": "A = (x, y) has last multiplier m = 1/(x y) for the coordinate volume",
  "chart": {"coords": ["x", "y"], "domain": [[0.5, 2], [0.5, 2]]},
  "structure": {"kind": "volume", "density": "1"},
  "fields": {"A": ["x", "y"]},
  "scalars": {"m": "1/(x*y)"},
  "checks": [
    {"name": "residual", "kind": "last_multiplier", "field": "A", "multiplier": "m", "tolerance": 1e-12},
    {"name": "closed_form", "kind": "def11", "field": "A", "multiplier": "m"}
  ]
}
)json"},
      {"poisson_plane.json", R"json({
  "version": 1,
  "description": "Planar bracket {x, y} = h with h = 1 + x^2 + y^2; h is its own last multiplier",
  "chart": {"coords": ["x", "y"], "domain": [[0.5, 2], [0.5, 2]]},
  "structure": {"kind": "poisson", "bivector": [[1, 2, "1 + x^2 + y^2"]]},
  "scalars": {"h": "1 + x^2 + y^2", "h2": "(1 + x^2 + y^2)^2"},
  "checks": [
    {"name": "jacobi", "kind": "poisson_jacobi"},
    {"name": "h_self", "kind": "self_multiplier", "function": "h", "tolerance": 1e-12},
    {"name": "h_hamiltonian", "kind": "ham_multiplier", "hamiltonian": "h", "multiplier": "h"},
    {"name": "h2_self", "kind": "self_multiplier", "function": "h2"}
  ]
}
)json"},
      {"lie_poisson_2d.json", R"json({
  "version": 1,
  "description": "Lie-Poisson structure of [e1, e2] = 2 e1 + 3 e2 with the affine self-multipliers A (2 x1 + 3 x2) + B",
  "chart": {"coords": ["x1", "x2"], "domain": [[0.5, 2], [0.5, 2]]},
  "structure": {"kind": "poisson", "structure_constants": [[1, 2, 1, 2], [1, 2, 2, 3]]},
  "scalars": {"f": "2*x1 + 3*x2", "g": "-1.5*(2*x1 + 3*x2) + 4"},
  "checks": [
    {"name": "jacobi", "kind": "poisson_jacobi"},
    {"name": "affine_unit", "kind": "self_multiplier", "function": "f"},
    {"name": "affine_shifted", "kind": "self_multiplier", "function": "g"},
    {"name": "f_hamiltonian", "kind": "ham_multiplier", "hamiltonian": "f", "multiplier": "f"}
  ]
}
)json"},
      {"porous_solution.json", R"json({
  "version": 1,
  "description": "u = -x^2/(12 (t + 1)) solves u_t = (u^2)_xx on the cylinder t x R",
  "chart": {"coords": ["t", "x"], "domain": [[0.5, 2], [0.5, 2]]},
  "structure": {"kind": "euclidean"},
  "scalars": {"u": "-x^2/(12*(t + 1))"},
  "checks": [
    {"name": "porous", "kind": "porous_residual", "function": "u", "tolerance": 1e-12}
  ]
}
)json"},
      {"rotsym.json", R"json({
  "version": 1,
  "description": "g = dt^2 + cosh(t)^2 dtheta^2: m = 1/cosh(t) is a last multiplier of grad t",
  "chart": {"coords": ["t", "theta"], "domain": [[0.5, 2], [0, 6]]},
  "structure": {"kind": "rotsym", "phi": "cosh(t)"},
  "fields": {"X": ["0", "0"]},
  "scalars": {"u": "t", "m": "1/cosh(t)"},
  "checks": [
    {"name": "distance", "kind": "gradient_multiplier", "potential": "u", "multiplier": "m", "tolerance": 1e-12},
    {"name": "decomposed", "kind": "helmholtz_residual", "field": "X", "potential": "u", "multiplier": "m"}
  ]
}
)json"},
      {"radial_harmonic_square_1d.json", R"json({
  "version": 1,
  "description": "n = 1, C1 = 1, C2 = 0: u = sqrt(r)",
  "chart": {"coords": ["x"], "domain": [[0.5, 2]]},
  "structure": {"kind": "euclidean"},
  "scalars": {"u": "sqrt(sqrt(x^2))"},
  "checks": [
    {"name": "square_harmonic", "kind": "harmonic_square", "function": "u"},
    {"name": "self_multiplier", "kind": "gradient_multiplier", "potential": "u", "multiplier": "u"}
  ]
}
)json"},
      {"radial_harmonic_square_2d.json", R"json({
  "version": 1,
  "description": "n = 2, C1 = 1, C2 = 0: u = sqrt(ln r) away from the unit circle",
  "chart": {"coords": ["x", "y"], "domain": [[1.5, 3], [1.5, 3]]},
  "structure": {"kind": "euclidean"},
  "scalars": {"u": "sqrt(ln(sqrt(x^2 + y^2)))"},
  "checks": [
    {"name": "square_harmonic", "kind": "harmonic_square", "function": "u"},
    {"name": "self_multiplier", "kind": "gradient_multiplier", "potential": "u", "multiplier": "u"}
  ]
}
)json"},
      {"radial_harmonic_square_3d.json", R"json({
  "version": 1,
  "description": "n = 3, C1 = 1, C2 = 2: u = sqrt(1/r + 2)",
  "chart": {"coords": ["x", "y", "z"], "domain": [[0.5, 2], [0.5, 2], [0.5, 2]]},
  "structure": {"kind": "euclidean"},
  "scalars": {"u": "sqrt(1/sqrt(x^2 + y^2 + z^2) + 2)"},
  "checks": [
    {"name": "square_harmonic", "kind": "harmonic_square", "function": "u"},
    {"name": "self_multiplier", "kind": "gradient_multiplier", "potential": "u", "multiplier": "u"}
  ]
}
)json"},
      {"helmholtz_pair.json", R"json({
  "version": 1,
  "description": "Harmonic a = x > 0 and b = x y: m = a^2 is a last multiplier of grad(b/a)",
  "chart": {"coords": ["x", "y"], "domain": [[0.5, 2], [0.5, 2]]},
  "structure": {"kind": "euclidean"},
  "scalars": {"a": "x", "b": "x*y"},
  "checks": [
    {"name": "laplace_pair", "kind": "helmholtz_pair", "a": "a", "b": "b", "k": 0}
  ]
}
)json"},
      {"helmholtz_pair_trig.json", R"json({
  "version": 1,
  "description": "a = sin x, b = cos x solve f'' + f = 0: m = sin(x)^2 is a last multiplier of grad(cot x)",
  "chart": {"coords": ["x"], "domain": [[0.3, 2.8]]},
  "structure": {"kind": "euclidean"},
  "scalars": {"a": "sin(x)", "b": "cos(x)"},
  "checks": [
    {"name": "trig_pair", "kind": "helmholtz_pair", "a": "a", "b": "b", "k": 1}
  ]
}
)json"},
      {"m_harmonic_form.json", R"json({
  "version": 1,
  "description": "w = dy is x^2-harmonic; x^2 is a first integral of [grad y, grad (y + 1)]",
  "chart": {"coords": ["x", "y"], "domain": [[0.5, 2], [0.5, 2]]},
  "structure": {"kind": "euclidean"},
  "scalars": {"m": "x^2", "a": "y", "b": "y + 1"},
  "forms": {"w": ["0", "1"]},
  "checks": [
    {"name": "m_harmonic", "kind": "m_harmonic", "multiplier": "m", "form": "w"},
    {"name": "bracket", "kind": "bracket_first_integral", "a": "a", "b": "b", "multiplier": "m"}
  ]
}
)json"},
      {"liouville_transport.json", R"json({
  "version": 1,
  "description": "m(x(t)) exp(int div A) and m(x(t)) det J(t) stay constant along the flow of A = (x, y)",
  "chart": {"coords": ["x", "y"], "domain": [[0.5, 2], [0.5, 2]]},
  "structure": {"kind": "volume", "density": "1"},
  "fields": {"A": ["x", "y"]},
  "scalars": {"m": "1/(x*y)"},
  "checks": [
    {"name": "static", "kind": "last_multiplier", "field": "A", "multiplier": "m"},
    {"name": "transport", "kind": "flow_drift", "field": "A", "multiplier": "m",
     "x0": [1, 1], "dt": 0.01, "T": 1, "max_drift": 1e-9},
    {"name": "jacobian", "kind": "jacobian_drift", "field": "A", "multiplier": "m",
     "x0": [1, 1], "dt": 0.01, "T": 1, "max_drift": 1e-8}
  ]
}
)json"},
  };
  return fixtures;
}

}  // namespace lmlab
