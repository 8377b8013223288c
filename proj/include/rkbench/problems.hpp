#pragma once

#include <string>

#include "rkbench/problem.hpp"

namespace rkbench {

// Lorenz-96: f_i = (u_{i+1} - u_{i-2}) u_{i-1} - u_i + F, indices mod N.
// Throws std::invalid_argument when u.size() < 4.
void lorenz96_rhs(const Vec& u, double F, Vec& out);
// Banded (cyclic bandwidth <= 4) dense Jacobian and the matching product.
Mat lorenz96_jacobian(const Vec& u);
void lorenz96_jvp(const Vec& u, const Vec& v, Vec& out);

// Default window [0, 0.5]; y0 = F everywhere except y0[20 mod N] = F + 0.01.
OdeProblem make_lorenz96(int N = 40, double F = 8.0);

// Viscous Burgers on [0, 1] periodic, first-order upwind convection
// (direction switched on sign(u_i)) plus second-order central diffusion,
// dx = 1/n: f_i = -u_i D-(u)_i + nu (u_{i+1} - 2 u_i + u_{i-1}) / dx^2.
// Throws std::invalid_argument when u.size() < 8.
void burgers_rhs(const Vec& u, double nu, Vec& out);
Mat burgers_jacobian(const Vec& u, double nu);
void burgers_jvp(const Vec& u, double nu, const Vec& v, Vec& out);

// Initial condition sin(2 pi x) + 0.5; window [0, 0.2]. The "stiff" preset
// is nu = 5e-2, the default nu = 5e-3.
OdeProblem make_burgers(int n = 256, double nu = 5e-3);

constexpr double kBurgersDefaultNu = 5e-3;
constexpr double kBurgersStiffNu = 5e-2;

// Problems addressable by name ("lorenz96", "burgers") with a preset
// ("default" or, for burgers, "stiff"). Throws std::invalid_argument listing
// valid names on a miss.
OdeProblem make_problem(const std::string& name, const std::string& preset = "default");

}  // namespace rkbench
