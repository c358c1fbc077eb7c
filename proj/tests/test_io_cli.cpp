#include "oracles.hpp"

#include "gabornc/cli/commands.hpp"
#include "gabornc/cli/config.hpp"
#include "gabornc/connection.hpp"
#include "gabornc/errors.hpp"
#include "gabornc/io.hpp"
#include "gabornc/windows.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gabornc;
namespace fs = std::filesystem;

namespace
{

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

class CliTest : public ::testing::Test
{
protected:
    void SetUp() override
    {
        dir_ = fs::temp_directory_path() /
               ("gabornc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run(std::vector<std::string> args)
    {
        args.insert(args.begin(), "gabornc");
        args.push_back("--out");
        args.push_back(dir_.string());
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        out_.str("");
        err_.str("");
        return cli::run(static_cast<int>(argv.size()), argv.data(), out_, err_);
    }

    fs::path dir_;
    std::ostringstream out_;
    std::ostringstream err_;
};

}  // namespace

TEST(Io, FormatNumberRoundTrips)
{
    EXPECT_EQ(io::format_number(0.1), "0.1");
    EXPECT_EQ(io::format_number(1.0), "1");
    EXPECT_EQ(std::stod(io::format_number(1.0 / 3.0)), 1.0 / 3.0);
    EXPECT_EQ(io::format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
}

TEST(Io, CsvHeaders)
{
    const LatticeSpec lat(Rational(1, 2), GridSpec(4, 4));
    const Signal f = make_window({WindowKind::gaussian, 0}, lat.grid());
    EXPECT_EQ(first_line(io::to_csv(f)), "index,t,re,im");
    EXPECT_EQ(first_line(io::to_csv(CoefficientArray(lat))), "k,l,re,im");
    EXPECT_EQ(first_line(io::to_csv(AlgebraElement::delta(lat.theta(), 0, 0))), "k,l,re,im");
    EXPECT_EQ(first_line(io::to_csv(FrameBounds{})), "A,B,method,iterations,residual");
    EXPECT_EQ(first_line(io::to_csv(DecayProfile{})), "N,shell_sup");
    DiagnosticsTable t;
    t.key_name = "theta";
    t.residual_names = {"wexler_raz"};
    EXPECT_EQ(first_line(io::to_csv(t)), "key,A,B,U_g,U_h,U_prod,residual_wexler_raz,status");
}

TEST(Io, SignalCsvRoundTrip)
{
    std::mt19937_64 rng(51);
    const GridSpec grid(4, 4);
    const Signal f = oracle::random_signal(grid, rng);
    EXPECT_EQ(max_abs_diff(io::signal_from_csv(io::to_csv(f), grid), f), 0.0);
    EXPECT_THROW(io::signal_from_csv("index,t,re,im\n0,0,1,0\n", grid), ShapeError);
}

TEST(Io, AlgebraCsvFloor)
{
    const Rational theta(1, 2);
    const AlgebraElement a =
        AlgebraElement::delta(theta, 0, 0) + AlgebraElement::delta(theta, 1, 1, Complex(1e-15));
    EXPECT_EQ(io::to_csv(a, 1e-13), "k,l,re,im\n0,0,1,0\n");
}

TEST(Io, JsonUsesNullForNonFinite)
{
    DiagnosticsTable t;
    t.key_name = "theta";
    t.rows.push_back(DiagnosticsRow{});
    const auto doc = io::to_json(t);
    EXPECT_TRUE(doc["rows"][0]["U_h"].is_null());
}

TEST(Io, SvgPlotHasOnePolylinePerSeries)
{
    const std::string svg = io::svg_line_plot({{"a", {1, 2, 3}, {1, 10, 100}}, {"b", {1, 2, 3}, {2, 3, 4}}},
                                              {.title = "t", .log_y = true});
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    std::size_t count = 0;
    for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1))
        ++count;
    EXPECT_EQ(count, 2U);
}

TEST(Config, MergeAndValidate)
{
    const auto doc = nlohmann::json::parse(R"({"grid": {"s": 16}, "lattice": {"p": 1, "q": 1}, "tighten": true})");
    const cli::ExperimentConfig c = cli::merge_json({}, doc);
    EXPECT_EQ(c.s, 16);
    EXPECT_EQ(c.period, 32);
    EXPECT_EQ(c.theta(), Rational(1));
    EXPECT_TRUE(c.tighten);
    EXPECT_NO_THROW(cli::validate(c));
}

TEST(Config, RejectsUnknownKeysAndTypes)
{
    EXPECT_THROW(cli::merge_json({}, nlohmann::json::parse(R"({"grid": {"n": 3}})")), ParameterError);
    EXPECT_THROW(cli::merge_json({}, nlohmann::json::parse(R"({"colour": 1})")), ParameterError);
    EXPECT_THROW(cli::merge_json({}, nlohmann::json::parse(R"({"grid": {"s": "many"}})")), ParameterError);
    EXPECT_THROW(cli::merge_json({}, nlohmann::json::parse(R"({"grid": 3})")), ParameterError);
}

TEST(Config, ValidateRejectsBadValues)
{
    cli::ExperimentConfig c;
    c.lattice_p = 3;
    c.lattice_q = 4;
    EXPECT_THROW(cli::validate(c), ParameterError);
    c = {};
    c.formats = {"xml"};
    EXPECT_THROW(cli::validate(c), ParameterError);
    c = {};
    c.cg_tol = 0.0;
    EXPECT_THROW(cli::validate(c), ParameterError);
}

TEST(Config, JsonRoundTrip)
{
    cli::ExperimentConfig c;
    c.window = "hermite(2)";
    c.thetas = {"1/2"};
    const cli::ExperimentConfig back = cli::merge_json({}, nlohmann::json::parse(cli::to_json(c).dump()));
    EXPECT_EQ(cli::to_json(back).dump(), cli::to_json(c).dump());
}

TEST_F(CliTest, FrameBoundsIndicatorAtCriticalDensity)
{
    EXPECT_EQ(run({"frame-bounds", "--window", "indicator", "--theta", "1"}), cli::exit_ok);
    const std::string csv = slurp(dir_ / "frame_bounds.csv");
    EXPECT_EQ(csv.substr(0, csv.find(",dense")), "A,B,method,iterations,residual\n1,1");
}

TEST_F(CliTest, FrameBoundsGaussianAtCriticalDensity)
{
    EXPECT_EQ(run({"frame-bounds", "--theta", "1/1"}), cli::exit_not_a_frame);
    EXPECT_NE(out_.str().find("not a frame"), std::string::npos);
}

TEST_F(CliTest, MalformedConfigWritesNothing)
{
    const fs::path config = fs::temp_directory_path() / "gabornc_bad_config.json";
    std::ofstream(config) << "{\"grid\": ";
    EXPECT_EQ(run({"frame-bounds", "--config", config.string()}), cli::exit_usage);
    EXPECT_FALSE(fs::exists(dir_));
    fs::remove(config);
}

TEST_F(CliTest, FlagsOverrideConfig)
{
    const fs::path config = fs::temp_directory_path() / "gabornc_flag_config.json";
    std::ofstream(config) << R"({"grid": {"s": 8, "P": 8}, "window": {"kind": "indicator"}})";
    EXPECT_EQ(run({"frame-bounds", "--config", config.string(), "--s", "16", "--show-config"}), cli::exit_ok);
    const auto doc = nlohmann::json::parse(out_.str());
    EXPECT_EQ(doc["grid"]["s"], 16);
    EXPECT_EQ(doc["grid"]["P"], 8);
    EXPECT_EQ(doc["window"]["kind"], "indicator");
    fs::remove(config);
}

TEST_F(CliTest, DualWindowIndicatorIsSelfDual)
{
    EXPECT_EQ(run({"dual-window", "--window", "indicator", "--theta", "1"}), cli::exit_ok);
    const GridSpec grid(32, 32);
    const Signal h = io::signal_from_csv(slurp(dir_ / "dual_window.csv"), grid);
    EXPECT_LT(max_abs_diff(h, make_window({WindowKind::indicator, 0}, grid)), 1e-9);
}

TEST_F(CliTest, DualWindowGaussianPrintsSmallDefect)
{
    EXPECT_EQ(run({"dual-window"}), cli::exit_ok);
    const std::string text = out_.str();
    const double defect = std::stod(text.substr(text.find('=') + 1));
    EXPECT_LT(defect, 1e-8);
    EXPECT_EQ(run({"dual-window", "--theta", "1"}), cli::exit_not_a_frame);
}

TEST_F(CliTest, NcgCheckExitCodes)
{
    EXPECT_EQ(run({"ncg-check"}), cli::exit_ok);
    EXPECT_EQ(run({"ncg-check", "--window", "indicator"}), cli::exit_expected_failure);
    const auto doc = nlohmann::json::parse(slurp(dir_ / "ncg_check.json"));
    EXPECT_TRUE(doc["rough_window"].get<bool>());
    EXPECT_GT(doc["residuals"]["curvature"].get<double>(), 1e-6);
    EXPECT_EQ(run({"ncg-check", "--scale", "0"}), cli::exit_usage);
}

TEST_F(CliTest, BltSweepExitCodes)
{
    EXPECT_EQ(run({"blt-sweep", "--thetas", ""}), cli::exit_usage);
    // An even period puts the sampled Zak domain on the zero at (1/2, 1/2).
    const fs::path config = fs::temp_directory_path() / "gabornc_sweep_config.json";
    std::ofstream(config) << R"({"sweep": {"s": 32, "P": 32}})";
    EXPECT_EQ(run({"blt-sweep", "--config", config.string(), "--thetas", "1/2,1", "--formats", "csv,svg"}),
              cli::exit_ok);
    fs::remove(config);
    EXPECT_TRUE(fs::exists(dir_ / "blt_sweep.svg"));
    EXPECT_NE(slurp(dir_ / "blt_sweep.csv").find("not_a_frame"), std::string::npos);
}

TEST_F(CliTest, ProjectionExitCodes)
{
    EXPECT_EQ(run({"projection"}), cli::exit_not_a_frame);
    EXPECT_EQ(run({"projection", "--window", "indicator", "--theta", "1"}), cli::exit_ok);
    EXPECT_EQ(slurp(dir_ / "projection.csv"), "k,l,re,im\n0,0,1,0\n");
    EXPECT_EQ(run({"projection", "--tighten"}), cli::exit_ok);
}

TEST_F(CliTest, BattleCheckExitCodes)
{
    EXPECT_EQ(run({"battle-check", "--window", "indicator", "--s-list", "32,64,128"}), cli::exit_expected_failure);
    EXPECT_NE(out_.str().find("non-convergent"), std::string::npos);
    EXPECT_EQ(run({"battle-check"}), cli::exit_not_a_frame);
}

TEST_F(CliTest, UsageErrors)
{
    EXPECT_EQ(run({}), cli::exit_usage);
    EXPECT_EQ(run({"frame-bounds", "--s", "zero"}), cli::exit_usage);
    EXPECT_EQ(run({"frame-bounds", "--theta", "3/4"}), cli::exit_usage);
    EXPECT_EQ(run({"no-such-command"}), cli::exit_usage);
}
