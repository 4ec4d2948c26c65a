#pragma once

// Built-in catalog of continuous-time chaotic (and one quasiperiodic) flows.
// Parameter values follow the cited original publications. Initial conditions,
// dt and period were produced by settle_on_attractor and select_timescales
// (tools/calibrate.cpp) and are stored here as data.

#include "chaosbench/system_spec.hpp"

#include <cmath>
#include <vector>

namespace chaosbench::systems {

namespace detail {

inline std::vector<Parameter> params(std::initializer_list<Parameter> list) { return list; }

}  // namespace detail

inline SystemSpec lorenz() {
  SystemSpec s;
  s.name = "Lorenz";
  s.dimension = 3;
  s.parameters = detail::params({{"sigma", 10.0}, {"rho", 28.0}, {"beta", 8.0 / 3.0}});
  s.rhs = [](auto x, double, auto p, auto f) {
    f[0] = p[0] * (x[1] - x[0]);
    f[1] = x[0] * (p[1] - x[2]) - x[1];
    f[2] = x[0] * x[1] - p[2] * x[2];
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = -p[0], j[1] = p[0], j[2] = 0.0;
    j[3] = p[1] - x[2], j[4] = -1.0, j[5] = -x[0];
    j[6] = x[1], j[7] = x[0], j[8] = -p[2];
  };
  s.default_initial_condition = {-10.952331059589314, -19.27934854985967, 16.60032287192087};
  s.dt = 0.0080034724569907467;
  s.period = 0.75296668875368933;
  s.state_bound = 100.0;
  s.citation = "Lorenz, E. N. (1963). Deterministic nonperiodic flow. J. Atmos. Sci. 20, 130-141.";
  s.description = "A minimal model of Rayleigh-Benard convection in the atmosphere.";
  return s;
}

inline SystemSpec rossler() {
  SystemSpec s;
  s.name = "Rossler";
  s.dimension = 3;
  s.parameters = detail::params({{"a", 0.2}, {"b", 0.2}, {"c", 5.7}});
  s.rhs = [](auto x, double, auto p, auto f) {
    f[0] = -x[1] - x[2];
    f[1] = x[0] + p[0] * x[1];
    f[2] = p[1] + x[2] * (x[0] - p[2]);
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = 0.0, j[1] = -1.0, j[2] = -1.0;
    j[3] = 1.0, j[4] = p[0], j[5] = 0.0;
    j[6] = x[2], j[7] = 0.0, j[8] = x[0] - p[2];
  };
  s.default_initial_condition = {7.0645716855618934, -9.2567140252318492, 0.11736405098985898};
  s.dt = 0.049799209586945427;
  s.period = 5.8962264150943398;
  s.state_bound = 100.0;
  s.citation = "Rossler, O. E. (1976). An equation for continuous chaos. Phys. Lett. A 57, 397-398.";
  s.description = "Spiral-type attractor inspired by chemical reaction kinetics; spiking z component.";
  return s;
}

inline SystemSpec chen() {
  SystemSpec s;
  s.name = "Chen";
  s.dimension = 3;
  s.parameters = detail::params({{"a", 35.0}, {"b", 3.0}, {"c", 28.0}});
  s.rhs = [](auto x, double, auto p, auto f) {
    f[0] = p[0] * (x[1] - x[0]);
    f[1] = (p[2] - p[0]) * x[0] - x[0] * x[2] + p[2] * x[1];
    f[2] = x[0] * x[1] - p[1] * x[2];
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = -p[0], j[1] = p[0], j[2] = 0.0;
    j[3] = p[2] - p[0] - x[2], j[4] = p[2], j[5] = -x[0];
    j[6] = x[1], j[7] = x[0], j[8] = -p[1];
  };
  s.default_initial_condition = {2.7070965073247009, 1.3774838646989251, 20.204312008986189};
  s.dt = 0.0024940939854424722;
  s.period = 0.59780009564801528;
  s.state_bound = 100.0;
  s.citation = "Chen, G., Ueta, T. (1999). Yet another chaotic attractor. Int. J. Bifurc. Chaos 9, 1465-1466.";
  s.description = "Double-scroll attractor dual to the Lorenz system in the sense of generalized Lorenz forms.";
  return s;
}

inline SystemSpec lu_chen() {
  SystemSpec s;
  s.name = "LuChen";
  s.dimension = 3;
  s.parameters = detail::params({{"a", 36.0}, {"b", 3.0}, {"c", 20.0}});
  s.rhs = [](auto x, double, auto p, auto f) {
    f[0] = p[0] * (x[1] - x[0]);
    f[1] = -x[0] * x[2] + p[2] * x[1];
    f[2] = x[0] * x[1] - p[1] * x[2];
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = -p[0], j[1] = p[0], j[2] = 0.0;
    j[3] = -x[2], j[4] = p[2], j[5] = -x[0];
    j[6] = x[1], j[7] = x[0], j[8] = -p[1];
  };
  s.default_initial_condition = {-14.63773204950448, -16.001212755153944, 22.583462999247544};
  s.dt = 0.0035880432636901409;
  s.period = 1.9406389291299777;
  s.state_bound = 100.0;
  s.citation = "Lu, J., Chen, G. (2002). A new chaotic attractor coined. Int. J. Bifurc. Chaos 12, 659-661.";
  s.description = "Attractor bridging the Lorenz and Chen families.";
  return s;
}

inline SystemSpec thomas() {
  SystemSpec s;
  s.name = "Thomas";
  s.dimension = 3;
  s.parameters = detail::params({{"b", 0.18}});
  s.rhs = [](auto x, double, auto p, auto f) {
    f[0] = std::sin(x[1]) - p[0] * x[0];
    f[1] = std::sin(x[2]) - p[0] * x[1];
    f[2] = std::sin(x[0]) - p[0] * x[2];
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = -p[0], j[1] = std::cos(x[1]), j[2] = 0.0;
    j[3] = 0.0, j[4] = -p[0], j[5] = std::cos(x[2]);
    j[6] = std::cos(x[0]), j[7] = 0.0, j[8] = -p[0];
  };
  s.default_initial_condition = {-3.3436909375535184, 0.49662209424333342, 1.594898389272644};
  s.dt = 0.061079056822090867;
  s.period = 42.999656002751983;
  s.flags.polynomial = false;
  s.state_bound = 20.0;
  s.citation = "Thomas, R. (1999). Deterministic chaos seen in terms of feedback circuits. Int. J. Bifurc. Chaos 9, 1889-1905.";
  s.description = "Cyclically symmetric attractor modelling a feedback circuit; labyrinth-like dynamics.";
  return s;
}

inline SystemSpec halvorsen() {
  SystemSpec s;
  s.name = "Halvorsen";
  s.dimension = 3;
  s.parameters = detail::params({{"a", 1.4}, {"b", 4.0}});
  s.rhs = [](auto x, double, auto p, auto f) {
    f[0] = -p[0] * x[0] - p[1] * x[1] - p[1] * x[2] - x[1] * x[1];
    f[1] = -p[0] * x[1] - p[1] * x[2] - p[1] * x[0] - x[2] * x[2];
    f[2] = -p[0] * x[2] - p[1] * x[0] - p[1] * x[1] - x[0] * x[0];
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = -p[0], j[1] = -p[1] - 2.0 * x[1], j[2] = -p[1];
    j[3] = -p[1], j[4] = -p[0], j[5] = -p[1] - 2.0 * x[2];
    j[6] = -p[1] - 2.0 * x[0], j[7] = -p[1], j[8] = -p[0];
  };
  s.default_initial_condition = {5.9168265077582785, -9.7426445091083433, -9.5384431079693073};
  s.dt = 0.0058891150309060758;
  s.period = 1.4854426619132501;
  s.state_bound = 100.0;
  s.citation = "Sprott, J. C. (2003). Chaos and Time-Series Analysis. Oxford University Press.";
  s.description = "Cyclically symmetric quadratic attractor with three interlinked lobes.";
  return s;
}

inline SystemSpec aizawa() {
  SystemSpec s;
  s.name = "Aizawa";
  s.dimension = 3;
  s.parameters = detail::params(
      {{"a", 0.95}, {"b", 0.7}, {"c", 0.6}, {"d", 3.5}, {"e", 0.25}, {"f", 0.1}});
  s.rhs = [](auto x, double, auto p, auto f) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    f[0] = (x[2] - p[1]) * x[0] - p[3] * x[1];
    f[1] = p[3] * x[0] + (x[2] - p[1]) * x[1];
    f[2] = p[2] + p[0] * x[2] - x[2] * x[2] * x[2] / 3.0 - r2 * (1.0 + p[4] * x[2]) +
           p[5] * x[2] * x[0] * x[0] * x[0];
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    j[0] = x[2] - p[1], j[1] = -p[3], j[2] = x[0];
    j[3] = p[3], j[4] = x[2] - p[1], j[5] = x[1];
    j[6] = -2.0 * x[0] * (1.0 + p[4] * x[2]) + 3.0 * p[5] * x[2] * x[0] * x[0];
    j[7] = -2.0 * x[1] * (1.0 + p[4] * x[2]);
    j[8] = p[0] - x[2] * x[2] - p[4] * r2 + p[5] * x[0] * x[0] * x[0];
  };
  s.default_initial_condition = {-0.7687161981337004, 0.10260209407778535, 1.6733214281246975};
  s.dt = 0.017438616071428572;
  s.period = 1.7857142857142856;
  s.state_bound = 20.0;
  s.citation = "Langford, W. F. (1984). Numerical studies of torus bifurcations. Int. Ser. Numer. Math. 70, 285-295.";
  s.description = "Sphere-like attractor with a tubular axis, arising from torus bifurcations.";
  return s;
}

inline SystemSpec arneodo() {
  SystemSpec s;
  s.name = "Arneodo";
  s.dimension = 3;
  s.parameters = detail::params({{"a", -5.5}, {"b", 3.5}, {"c", 1.0}, {"d", -1.0}});
  s.rhs = [](auto x, double, auto p, auto f) {
    f[0] = x[1];
    f[1] = x[2];
    f[2] = -p[0] * x[0] - p[1] * x[1] - p[2] * x[2] + p[3] * x[0] * x[0] * x[0];
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = 0.0, j[1] = 1.0, j[2] = 0.0;
    j[3] = 0.0, j[4] = 0.0, j[5] = 1.0;
    j[6] = -p[0] + 3.0 * p[3] * x[0] * x[0], j[7] = -p[1], j[8] = -p[2];
  };
  s.default_initial_condition = {0.18965618962771422, -0.63272634967280361, -3.0483611613325836};
  s.dt = 0.019657055152979067;
  s.period = 3.5430839002267573;
  s.state_bound = 50.0;
  s.citation = "Arneodo, A., Coullet, P., Tresser, C. (1981). Possible new strange attractors with spiral structure. Commun. Math. Phys. 79, 573-579.";
  s.description = "Third-order jerk flow near a Shil'nikov homoclinic orbit.";
  return s;
}

inline SystemSpec sprott_jerk() {
  SystemSpec s;
  s.name = "SprottJerk";
  s.dimension = 3;
  s.parameters = detail::params({{"mu", 2.017}});
  s.rhs = [](auto x, double, auto p, auto f) {
    f[0] = x[1];
    f[1] = x[2];
    f[2] = -p[0] * x[2] + x[1] * x[1] - x[0];
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = 0.0, j[1] = 1.0, j[2] = 0.0;
    j[3] = 0.0, j[4] = 0.0, j[5] = 1.0;
    j[6] = -1.0, j[7] = 2.0 * x[1], j[8] = -p[0];
  };
  s.default_initial_condition = {0.5968960596319961, 1.1960196062896431, 0.43711357419725144};
  s.dt = 0.073074117030829083;
  s.period = 12.264521193092621;
  s.state_bound = 50.0;
  s.citation = "Sprott, J. C. (1997). Simplest dissipative chaotic flow. Phys. Lett. A 228, 271-274.";
  s.description = "Simplest quadratic jerk equation with chaotic solutions.";
  return s;
}

inline SystemSpec rucklidge() {
  SystemSpec s;
  s.name = "Rucklidge";
  s.dimension = 3;
  s.parameters = detail::params({{"kappa", 2.0}, {"lambda", 6.7}});
  s.rhs = [](auto x, double, auto p, auto f) {
    f[0] = -p[0] * x[0] + p[1] * x[1] - x[1] * x[2];
    f[1] = x[0];
    f[2] = -x[2] + x[1] * x[1];
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = -p[0], j[1] = p[1] - x[2], j[2] = -x[1];
    j[3] = 1.0, j[4] = 0.0, j[5] = 0.0;
    j[6] = 0.0, j[7] = 2.0 * x[1], j[8] = -1.0;
  };
  s.default_initial_condition = {-1.8380402333443004, 1.9968522456313427, 7.6834032503927467};
  s.dt = 0.019657055152979067;
  s.period = 3.5430839002267573;
  s.state_bound = 100.0;
  s.citation = "Rucklidge, A. M. (1992). Chaos in models of double convection. J. Fluid Mech. 237, 209-229.";
  s.description = "Two-dimensional convection in a horizontal magnetic field or rotating layer.";
  return s;
}

inline SystemSpec hadley() {
  SystemSpec s;
  s.name = "Hadley";
  s.dimension = 3;
  s.parameters = detail::params({{"a", 0.25}, {"b", 4.0}, {"f", 8.0}, {"g", 1.0}});
  s.rhs = [](auto x, double, auto p, auto f) {
    f[0] = -x[1] * x[1] - x[2] * x[2] - p[0] * x[0] + p[0] * p[2];
    f[1] = x[0] * x[1] - p[1] * x[0] * x[2] - x[1] + p[3];
    f[2] = p[1] * x[0] * x[1] + x[0] * x[2] - x[2];
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = -p[0], j[1] = -2.0 * x[1], j[2] = -2.0 * x[2];
    j[3] = x[1] - p[1] * x[2], j[4] = x[0] - 1.0, j[5] = -p[1] * x[0];
    j[6] = p[1] * x[1] + x[2], j[7] = p[1] * x[0], j[8] = x[0] - 1.0;
  };
  s.default_initial_condition = {0.45859160024746565, 0.22217649746948773, 0.98443838394582872};
  s.dt = 0.0098344068414490931;
  s.period = 1.3972725240330872;
  s.state_bound = 50.0;
  s.citation = "Lorenz, E. N. (1984). Irregularity: a fundamental property of the atmosphere. Tellus A 36, 98-110.";
  s.description = "Low-order model of the general atmospheric circulation with a Hadley cell.";
  return s;
}

inline SystemSpec moore_spiegel() {
  SystemSpec s;
  s.name = "MooreSpiegel";
  s.dimension = 3;
  s.parameters = detail::params({{"t", 6.0}, {"r", 20.0}});
  s.rhs = [](auto x, double, auto p, auto f) {
    f[0] = x[1];
    f[1] = x[2];
    f[2] = -x[2] - (p[0] - p[1] + p[1] * x[0] * x[0]) * x[1] - p[0] * x[0];
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = 0.0, j[1] = 1.0, j[2] = 0.0;
    j[3] = 0.0, j[4] = 0.0, j[5] = 1.0;
    j[6] = -2.0 * p[1] * x[0] * x[1] - p[0];
    j[7] = -(p[0] - p[1] + p[1] * x[0] * x[0]);
    j[8] = -1.0;
  };
  s.default_initial_condition = {0.99031405687977447, 5.0647761261591793, 9.736951988776033};
  s.dt = 0.012540128410914928;
  s.period = 3.5014005602240892;
  s.state_bound = 50.0;
  s.citation = "Moore, D. W., Spiegel, E. A. (1966). A thermally excited non-linear oscillator. Astrophys. J. 143, 871-887.";
  s.description = "Thermally excited oscillator for a fluid parcel in a stellar atmosphere.";
  return s;
}

inline SystemSpec hyper_rossler() {
  SystemSpec s;
  s.name = "HyperRossler";
  s.dimension = 4;
  s.parameters = detail::params({{"a", 0.25}, {"b", 3.0}, {"c", 0.5}, {"d", 0.05}});
  s.rhs = [](auto x, double, auto p, auto f) {
    f[0] = -x[1] - x[2];
    f[1] = x[0] + p[0] * x[1] + x[3];
    f[2] = p[1] + x[0] * x[2];
    f[3] = -p[2] * x[2] + p[3] * x[3];
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = 0.0, j[1] = -1.0, j[2] = -1.0, j[3] = 0.0;
    j[4] = 1.0, j[5] = p[0], j[6] = 0.0, j[7] = 1.0;
    j[8] = x[2], j[9] = 0.0, j[10] = x[0], j[11] = 0.0;
    j[12] = 0.0, j[13] = 0.0, j[14] = -p[2], j[15] = p[3];
  };
  s.default_initial_condition = {-25.048621382194312, 40.824666399631212, 0.12953141411852356, 44.284748919533548};
  s.dt = 0.014389145105204218;
  s.period = 6.6489361702127656;
  s.state_bound = 500.0;
  s.citation = "Rossler, O. E. (1979). An equation for hyperchaos. Phys. Lett. A 71, 155-157.";
  s.description = "Four-dimensional flow with two positive Lyapunov exponents.";
  return s;
}

inline SystemSpec shimizu_morioka() {
  SystemSpec s;
  s.name = "ShimizuMorioka";
  s.dimension = 3;
  s.parameters = detail::params({{"a", 0.75}, {"b", 0.45}});
  s.rhs = [](auto x, double, auto p, auto f) {
    f[0] = x[1];
    f[1] = x[0] - p[0] * x[1] - x[0] * x[2];
    f[2] = -p[1] * x[2] + x[0] * x[0];
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = 0.0, j[1] = 1.0, j[2] = 0.0;
    j[3] = 1.0 - x[2], j[4] = -p[0], j[5] = -x[0];
    j[6] = 2.0 * x[0], j[7] = 0.0, j[8] = -p[1];
  };
  s.default_initial_condition = {0.11774330224721614, 0.12789380669790498, 0.60658572180191617};
  s.dt = 0.095514574454298479;
  s.period = 8.4208767682157024;
  s.state_bound = 50.0;
  s.citation = "Shimizu, T., Morioka, N. (1980). On the bifurcation of a symmetric limit cycle to an asymmetric one in a simple model. Phys. Lett. A 76, 201-204.";
  s.description = "Lorenz-like switching attractor from a model of laser dynamics.";
  return s;
}

inline SystemSpec burke_shaw() {
  SystemSpec s;
  s.name = "BurkeShaw";
  s.dimension = 3;
  s.parameters = detail::params({{"s", 10.0}, {"v", 4.272}});
  s.rhs = [](auto x, double, auto p, auto f) {
    f[0] = -p[0] * (x[0] + x[1]);
    f[1] = -x[1] - p[0] * x[0] * x[2];
    f[2] = p[0] * x[0] * x[1] + p[1];
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = -p[0], j[1] = -p[0], j[2] = 0.0;
    j[3] = -p[0] * x[2], j[4] = -1.0, j[5] = -p[0] * x[0];
    j[6] = p[0] * x[1], j[7] = p[0] * x[0], j[8] = 0.0;
  };
  s.default_initial_condition = {0.36195379759103452, -0.44466435719448455, -0.56278702515503931};
  s.dt = 0.0048231139250809194;
  s.period = 1.9654681399186897;
  s.state_bound = 50.0;
  s.citation = "Shaw, R. (1981). Strange attractors, chaotic behavior, and information flow. Z. Naturforsch. A 36, 80-112.";
  s.description = "Lorenz-like flow derived by Burke and Shaw as an information-flow example.";
  return s;
}

inline SystemSpec sprott_b() {
  SystemSpec s;
  s.name = "SprottB";
  s.dimension = 3;
  s.parameters = {};
  s.rhs = [](auto x, double, auto, auto f) {
    f[0] = x[1] * x[2];
    f[1] = x[0] - x[1];
    f[2] = 1.0 - x[0] * x[1];
  };
  s.analytic_jacobian = [](auto x, double, auto, auto j) {
    j[0] = 0.0, j[1] = x[2], j[2] = x[1];
    j[3] = 1.0, j[4] = -1.0, j[5] = 0.0;
    j[6] = -x[1], j[7] = -x[0], j[8] = 0.0;
  };
  s.default_initial_condition = {-0.67672874453363963, 0.91300435205682673, -1.4326891502382155};
  s.dt = 0.033080610930952714;
  s.period = 10.235474208046146;
  s.state_bound = 50.0;
  s.citation = "Sprott, J. C. (1994). Some simple chaotic flows. Phys. Rev. E 50, R647-R650.";
  s.description = "Five-term quadratic flow from an exhaustive search for simple chaotic systems.";
  return s;
}

inline SystemSpec henon_heiles() {
  SystemSpec s;
  s.name = "HenonHeiles";
  s.dimension = 4;
  s.parameters = detail::params({{"lam", 1.0}});
  s.rhs = [](auto x, double, auto p, auto f) {
    f[0] = x[2];
    f[1] = x[3];
    f[2] = -x[0] - 2.0 * p[0] * x[0] * x[1];
    f[3] = -x[1] - p[0] * (x[0] * x[0] - x[1] * x[1]);
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = 0.0, j[1] = 0.0, j[2] = 1.0, j[3] = 0.0;
    j[4] = 0.0, j[5] = 0.0, j[6] = 0.0, j[7] = 1.0;
    j[8] = -1.0 - 2.0 * p[0] * x[1], j[9] = -2.0 * p[0] * x[0], j[10] = 0.0, j[11] = 0.0;
    j[12] = -2.0 * p[0] * x[0], j[13] = -1.0 + 2.0 * p[0] * x[1], j[14] = 0.0, j[15] = 0.0;
  };
  s.energy = [](std::span<const double> x, std::span<const double> p) {
    return 0.5 * (x[2] * x[2] + x[3] * x[3]) + 0.5 * (x[0] * x[0] + x[1] * x[1]) +
           p[0] * (x[0] * x[0] * x[1] - x[1] * x[1] * x[1] / 3.0);
  };
  s.default_initial_condition = {-0.30142160134574658, -0.26449752767124846, -0.33104417873852005, -0.16118704958987112};
  s.dt = 0.049949491074625339;
  s.period = 7.2886297376093303;
  s.flags.hamiltonian = true;
  s.state_bound = 5.0;
  s.citation = "Henon, M., Heiles, C. (1964). The applicability of the third integral of motion: some numerical experiments. Astron. J. 69, 73-79.";
  s.description = "Star moving in a cubic galactic potential; chaotic sea near the escape energy.";
  return s;
}

inline SystemSpec duffing() {
  SystemSpec s;
  s.name = "Duffing";
  s.dimension = 2;
  s.parameters = detail::params({{"k", 0.05}, {"b", 7.5}, {"omega", 1.0}});
  s.rhs = [](auto x, double t, auto p, auto f) {
    f[0] = x[1];
    f[1] = -p[0] * x[1] - x[0] * x[0] * x[0] + p[1] * std::cos(p[2] * t);
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = 0.0, j[1] = 1.0;
    j[2] = -3.0 * x[0] * x[0], j[3] = -p[0];
  };
  s.default_initial_condition = {1.9719087993000168, 1.0421585673559823};
  s.dt = 0.014031070402298852;
  s.period = 6.25;
  s.flags.nonautonomous = true;
  s.flags.polynomial = false;
  s.state_bound = 50.0;
  s.citation = "Ueda, Y. (1979). Randomly transitional phenomena in the system governed by Duffing's equation. J. Stat. Phys. 20, 181-196.";
  s.description = "Periodically forced hardening spring (Ueda oscillator).";
  return s;
}

inline SystemSpec forced_van_der_pol() {
  SystemSpec s;
  s.name = "ForcedVanDerPol";
  s.dimension = 2;
  s.parameters = detail::params({{"mu", 5.0}, {"a", 5.0}, {"omega", 2.466}});
  s.rhs = [](auto x, double t, auto p, auto f) {
    f[0] = x[1];
    f[1] = p[0] * (1.0 - x[0] * x[0]) * x[1] - x[0] + p[1] * std::sin(p[2] * t);
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    j[0] = 0.0, j[1] = 1.0;
    j[2] = -2.0 * p[0] * x[0] * x[1] - 1.0, j[3] = p[0] * (1.0 - x[0] * x[0]);
  };
  s.default_initial_condition = {1.4431434288051295, -0.63937602936899718};
  s.dt = 0.013864241348713398;
  s.period = 10;
  s.flags.nonautonomous = true;
  s.flags.polynomial = false;
  s.state_bound = 50.0;
  s.citation = "Parlitz, U., Lauterborn, W. (1987). Period-doubling cascades and devil's staircases of the driven van der Pol oscillator. Phys. Rev. A 36, 1428-1434.";
  s.description = "Sinusoidally driven relaxation oscillator.";
  return s;
}

// Autonomous flow on a 2-torus: rotation at omega_major about the z axis and
// at omega_minor around the tube, with radial attraction to the tube surface.
inline SystemSpec torus() {
  SystemSpec s;
  s.name = "Torus";
  s.dimension = 3;
  s.parameters = detail::params({{"omega_major", 1.0},
                                 {"omega_minor", 8.618033988749895},
                                 {"major_radius", 1.0},
                                 {"minor_radius", 0.5},
                                 {"lam", 1.0}});
  s.rhs = [](auto x, double, auto p, auto f) {
    const double rho = std::sqrt(x[0] * x[0] + x[1] * x[1]);
    const double sr = rho - p[2];
    const double g = p[4] * (1.0 - (sr * sr + x[2] * x[2]) / (p[3] * p[3]));
    const double ds = -p[1] * x[2] + g * sr;
    f[0] = -p[0] * x[1] + (x[0] / rho) * ds;
    f[1] = p[0] * x[0] + (x[1] / rho) * ds;
    f[2] = p[1] * sr + g * x[2];
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    const double rho = std::sqrt(x[0] * x[0] + x[1] * x[1]);
    const double u = x[0] / rho, v = x[1] / rho;
    const double sr = rho - p[2], z = x[2];
    const double r2 = p[3] * p[3];
    const double g = p[4] * (1.0 - (sr * sr + z * z) / r2);
    const double ds = -p[1] * z + g * sr;
    const double ds_s = g - 2.0 * p[4] * sr * sr / r2;
    const double ds_z = -p[1] - 2.0 * p[4] * sr * z / r2;
    const double dz_s = p[1] - 2.0 * p[4] * sr * z / r2;
    const double dz_z = g - 2.0 * p[4] * z * z / r2;
    j[0] = v * v * ds / rho + u * u * ds_s;
    j[1] = -p[0] - u * v * ds / rho + u * v * ds_s;
    j[2] = u * ds_z;
    j[3] = p[0] - u * v * ds / rho + u * v * ds_s;
    j[4] = u * u * ds / rho + v * v * ds_s;
    j[5] = v * ds_z;
    j[6] = dz_s * u;
    j[7] = dz_s * v;
    j[8] = dz_z;
  };
  s.default_initial_condition = {1.2796643647159254, -0.45824101795147304, 0.34777704199347537};
  s.dt = 0.010151377338877339;
  s.period = 6.25;
  s.flags.chaotic = false;
  s.flags.polynomial = false;
  s.state_bound = 5.0;
  s.citation = "Grebogi, C., Ott, E., Pelikan, S., Yorke, J. A. (1984). Strange attractors that are not chaotic. Physica D 13, 261-268.";
  s.description = "Quasiperiodic motion on a two-dimensional torus with incommensurate frequencies; non-chaotic control.";
  return s;
}

inline SystemSpec lotka_volterra4() {
  SystemSpec s;
  s.name = "LotkaVolterra4";
  s.dimension = 4;
  const double r[4] = {1.0, 0.72, 1.53, 1.27};
  const double a[4][4] = {{1.0, 1.09, 1.52, 0.0},
                          {0.0, 1.0, 0.44, 1.36},
                          {2.33, 0.0, 1.0, 0.47},
                          {1.21, 0.51, 0.35, 1.0}};
  for (int i = 0; i < 4; ++i) s.parameters.push_back({"r" + std::to_string(i + 1), r[i]});
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      s.parameters.push_back({"a" + std::to_string(i + 1) + std::to_string(k + 1), a[i][k]});
  // p[0..3] = growth rates, p[4 + 4 i + k] = competition matrix.
  s.rhs = [](auto x, double, auto p, auto f) {
    for (int i = 0; i < 4; ++i) {
      double load = 0.0;
      for (int k = 0; k < 4; ++k) load += p[4 + 4 * i + k] * x[k];
      f[i] = p[i] * x[i] * (1.0 - load);
    }
  };
  s.analytic_jacobian = [](auto x, double, auto p, auto j) {
    for (int i = 0; i < 4; ++i) {
      double load = 0.0;
      for (int k = 0; k < 4; ++k) load += p[4 + 4 * i + k] * x[k];
      for (int k = 0; k < 4; ++k) j[4 * i + k] = -p[i] * x[i] * p[4 + 4 * i + k];
      j[4 * i + i] += p[i] * (1.0 - load);
    }
  };
  s.default_initial_condition = {0.29353118881707813, 0.38634153034947138, 0.16642218030098652, 0.39721591761871};
  s.dt = 0.34056196787991339;
  s.period = 39.588591204979316;
  s.state_bound = 2.0;
  s.citation = "Vano, J. A., Wildenberg, J. C., Anderson, M. B., Noel, J. K., Sprott, J. C. (2006). Chaos in low-dimensional Lotka-Volterra models of competition. Nonlinearity 19, 2391-2404.";
  s.description = "Four competing species with asymmetric competition; weakly chaotic ecology model.";
  return s;
}

inline std::vector<SystemSpec> builtin() {
  return {lorenz(),       rossler(),         chen(),        lu_chen(),      thomas(),
          halvorsen(),    aizawa(),          arneodo(),     sprott_jerk(),  rucklidge(),
          hadley(),       moore_spiegel(),   hyper_rossler(), shimizu_morioka(), burke_shaw(),
          sprott_b(),     henon_heiles(),    duffing(),     forced_van_der_pol(), torus(),
          lotka_volterra4()};
}

}  // namespace chaosbench::systems
