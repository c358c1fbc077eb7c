#pragma once

#include "gabornc/connection.hpp"
#include "gabornc/frame.hpp"
#include "gabornc/torus.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace gabornc::io
{

/// Shortest text that round-trips the double; "nan"/"inf" for non-finite values.
std::string format_number(double value);

// CSV emitters. Headers are fixed:
//   Signal            index,t,re,im
//   CoefficientArray  k,l,re,im
//   AlgebraElement    k,l,re,im
//   FrameBounds       A,B,method,iterations,residual
//   DecayProfile      N,shell_sup
//   DiagnosticsTable  key,A,B,U_g,U_h,U_prod,residual_<name>...,status
std::string to_csv(const Signal& f);
std::string to_csv(const CoefficientArray& c);
/// Coefficients with |a_kl| <= floor are omitted when floor >= 0.
std::string to_csv(const AlgebraElement& a, double floor = -1.0);
std::string to_csv(const FrameBounds& bounds);
std::string to_csv(const DecayProfile& profile);
std::string to_csv(const DiagnosticsTable& table);

nlohmann::ordered_json to_json(const FrameBounds& bounds);
nlohmann::ordered_json to_json(const DecayProfile& profile);
nlohmann::ordered_json to_json(const AlgebraElement& a);
nlohmann::ordered_json to_json(const DiagnosticsTable& table);

/// Reads back a Signal written by to_csv on the given grid.
Signal signal_from_csv(const std::string& text, const GridSpec& grid);

struct PlotSeries
{
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions
{
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
    int width = 640;
    int height = 400;
};

/// Minimal SVG line plot, one polyline per series. Non-finite points (and
/// nonpositive ones on a log axis) are skipped.
std::string svg_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options);

/// One series per numeric column of the table against its key.
std::string svg_plot(const DiagnosticsTable& table, const std::vector<std::string>& columns, bool log_y);

void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace gabornc::io
