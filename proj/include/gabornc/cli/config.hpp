#pragma once

#include "gabornc/frame.hpp"
#include "gabornc/rational.hpp"
#include "gabornc/windows.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace gabornc::cli
{

/// Every knob a subcommand reads. The JSON form mirrors the nesting of the
/// config file:
///
///   grid        {s, P}
///   window      {kind, scale}
///   lattice     {p, q}
///   solver      {cg_tol, max_iter, positivity_threshold}
///   truncation  {R, N_max, coefficient_floor}
///   tolerances  {leibniz, hermitian, hermitian_R, curvature, wexler_raz}
///   sweep       {thetas, s, P, s_list, battle_radius, log_plot}
///   output      {directory, formats}
///   tighten
struct ExperimentConfig
{
    int s = 32;
    int period = 32;

    std::string window = "gaussian";
    double window_scale = 1.0;

    long long lattice_p = 1;
    long long lattice_q = 2;

    double cg_tol = 1e-10;
    int max_iter = 5000;
    double positivity_threshold = 1e-6;

    long long radius = 20;
    int n_max = 8;
    double coefficient_floor = 1e-13;

    double leibniz_tol = 1e-8;
    double hermitian_tol = 1e-7;
    long long hermitian_radius = 15;
    double curvature_tol = 1e-6;
    double wexler_raz_tol = 1e-8;

    std::vector<std::string> thetas = {"1/2", "3/5", "3/4", "9/10", "19/20"};
    int sweep_s = 20;
    int sweep_period = 171;
    std::vector<int> s_list = {32, 64, 128};
    long long battle_radius = 3;
    bool log_plot = true;

    std::string output_directory = "gabornc_out";
    std::vector<std::string> formats = {"csv", "json"};

    bool tighten = false;

    Rational theta() const { return Rational(lattice_p, lattice_q); }
    WindowSpec window_spec() const { return WindowSpec::parse(window); }
    SolverOptions solver() const;
    bool wants(const std::string& format) const;
};

nlohmann::ordered_json to_json(const ExperimentConfig& config);

/// Overlays the keys present in doc onto base. Unknown keys and wrongly
/// typed values raise ParameterError.
ExperimentConfig merge_json(ExperimentConfig base, const nlohmann::json& doc);

ExperimentConfig load_config(const std::string& path);

/// Checks the preconditions shared by all subcommands: a valid grid and
/// window, a lattice that fits the grid, positive tolerances. Raises
/// ParameterError with a message naming the failing key.
void validate(const ExperimentConfig& config);

}  // namespace gabornc::cli
