#include "gabornc/io.hpp"

#include "gabornc/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gabornc::io
{

std::string format_number(double value)
{
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

namespace
{

nlohmann::ordered_json json_number(double value)
{
    if (std::isfinite(value)) return value;
    return nullptr;
}

double column_value(const DiagnosticsRow& row, const DiagnosticsTable& table, const std::string& name)
{
    if (name == "A") return row.lower;
    if (name == "B") return row.upper;
    if (name == "U_g") return row.u_g;
    if (name == "U_h") return row.u_h;
    if (name == "U_prod") return row.u_prod;
    const std::string bare = name.starts_with("residual_") ? name.substr(9) : name;
    const auto it = std::find(table.residual_names.begin(), table.residual_names.end(), bare);
    if (it == table.residual_names.end()) throw ParameterError("unknown plot column '" + name + "'");
    return row.residuals[static_cast<std::size_t>(it - table.residual_names.begin())];
}

}  // namespace

std::string to_csv(const Signal& f)
{
    std::ostringstream out;
    out << "index,t,re,im\n";
    for (std::size_t j = 0; j < f.size(); ++j)
    {
        out << j << ',' << format_number(f.grid().point(j)) << ',' << format_number(f[j].real()) << ','
            << format_number(f[j].imag()) << '\n';
    }
    return out.str();
}

std::string to_csv(const CoefficientArray& c)
{
    std::ostringstream out;
    out << "k,l,re,im\n";
    for (std::size_t k = 0; k < c.time_count(); ++k)
        for (std::size_t l = 0; l < c.freq_count(); ++l)
            out << k << ',' << l << ',' << format_number(c(k, l).real()) << ',' << format_number(c(k, l).imag())
                << '\n';
    return out.str();
}

std::string to_csv(const AlgebraElement& a, double floor)
{
    std::ostringstream out;
    out << "k,l,re,im\n";
    a.for_each([&](long long k, long long l, Complex v) {
        if (floor >= 0.0 && std::abs(v) <= floor) return;
        out << k << ',' << l << ',' << format_number(v.real()) << ',' << format_number(v.imag()) << '\n';
    });
    return out.str();
}

std::string to_csv(const FrameBounds& bounds)
{
    std::ostringstream out;
    out << "A,B,method,iterations,residual\n";
    out << format_number(bounds.lower) << ',' << format_number(bounds.upper) << ',' << bounds.method << ','
        << bounds.iterations << ',' << format_number(bounds.residual) << '\n';
    return out.str();
}

std::string to_csv(const DecayProfile& profile)
{
    std::ostringstream out;
    out << "N,shell_sup\n";
    for (std::size_t e = 0; e < profile.shell_sups.size(); ++e)
        out << e << ',' << format_number(profile.shell_sups[e]) << '\n';
    return out.str();
}

std::string to_csv(const DiagnosticsTable& table)
{
    std::ostringstream out;
    out << "key,A,B,U_g,U_h,U_prod";
    for (const auto& name : table.residual_names) out << ",residual_" << name;
    out << ",status\n";
    for (const auto& row : table.rows)
    {
        out << row.key_label << ',' << format_number(row.lower) << ',' << format_number(row.upper) << ','
            << format_number(row.u_g) << ',' << format_number(row.u_h) << ',' << format_number(row.u_prod);
        for (const double r : row.residuals) out << ',' << format_number(r);
        out << ',' << row.status << '\n';
    }
    return out.str();
}

nlohmann::ordered_json to_json(const FrameBounds& bounds)
{
    nlohmann::ordered_json doc;
    doc["A"] = json_number(bounds.lower);
    doc["B"] = json_number(bounds.upper);
    doc["method"] = bounds.method;
    doc["iterations"] = bounds.iterations;
    doc["residual"] = json_number(bounds.residual);
    return doc;
}

nlohmann::ordered_json to_json(const DecayProfile& profile)
{
    nlohmann::ordered_json doc;
    auto sups = nlohmann::ordered_json::array();
    for (const double v : profile.shell_sups) sups.push_back(json_number(v));
    doc["shell_sups"] = sups;
    doc["l1_norm"] = json_number(profile.l1_norm);
    doc["l1_tail"] = json_number(profile.l1_tail);
    doc["schwartz_like"] = profile.schwartz_like;
    doc["l1_like"] = profile.l1_like;
    return doc;
}

nlohmann::ordered_json to_json(const AlgebraElement& a)
{
    nlohmann::ordered_json doc;
    doc["theta"] = a.theta().to_string();
    auto coeffs = nlohmann::ordered_json::array();
    a.for_each([&](long long k, long long l, Complex v) {
        coeffs.push_back({{"k", k}, {"l", l}, {"re", v.real()}, {"im", v.imag()}});
    });
    doc["coefficients"] = coeffs;
    doc["l1_norm"] = a.l1_norm();
    return doc;
}

nlohmann::ordered_json to_json(const DiagnosticsTable& table)
{
    nlohmann::ordered_json doc;
    doc["key_name"] = table.key_name;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows)
    {
        nlohmann::ordered_json r;
        r["key"] = row.key_label;
        r["A"] = json_number(row.lower);
        r["B"] = json_number(row.upper);
        r["U_g"] = json_number(row.u_g);
        r["U_h"] = json_number(row.u_h);
        r["U_prod"] = json_number(row.u_prod);
        nlohmann::ordered_json residuals;
        for (std::size_t i = 0; i < table.residual_names.size(); ++i)
            residuals[table.residual_names[i]] = json_number(row.residuals[i]);
        r["residuals"] = residuals;
        r["status"] = row.status;
        rows.push_back(r);
    }
    doc["rows"] = rows;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    for (const auto& [key, value] : table.summary) summary[key] = json_number(value);
    doc["summary"] = summary;
    return doc;
}

Signal signal_from_csv(const std::string& text, const GridSpec& grid)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "index,t,re,im")
    {
        throw ParameterError("signal CSV must start with the header index,t,re,im");
    }
    std::vector<Complex> values(grid.size());
    std::size_t count = 0;
    while (std::getline(in, line))
    {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string index;
        std::string t;
        std::string re;
        std::string im;
        if (!std::getline(fields, index, ',') || !std::getline(fields, t, ',') || !std::getline(fields, re, ',') ||
            !std::getline(fields, im, ','))
        {
            throw ParameterError("malformed signal CSV line '" + line + "'");
        }
        const std::size_t j = std::stoul(index);
        if (j >= values.size()) throw ShapeError("signal CSV index " + index + " outside the grid");
        values[j] = {std::stod(re), std::stod(im)};
        ++count;
    }
    if (count != grid.size())
    {
        throw ShapeError("signal CSV holds " + std::to_string(count) + " samples, grid expects " +
                         std::to_string(grid.size()));
    }
    return Signal(grid, std::move(values));
}

std::string svg_line_plot(const std::vector<PlotSeries>& series, const PlotOptions& options)
{
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"};
    const double left = 70;
    const double right = 20;
    const double top = 40;
    const double bottom = 50;
    const double plot_w = options.width - left - right;
    const double plot_h = options.height - top - bottom;

    auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!options.log_y || y > 0.0);
    };
    auto y_of = [&](double y) { return options.log_y ? std::log10(y) : y; };

    double x_min = INFINITY;
    double x_max = -INFINITY;
    double y_min = INFINITY;
    double y_max = -INFINITY;
    for (const auto& s : series)
    {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
        {
            if (!usable(s.x[i], s.y[i])) continue;
            x_min = std::min(x_min, s.x[i]);
            x_max = std::max(x_max, s.x[i]);
            y_min = std::min(y_min, y_of(s.y[i]));
            y_max = std::max(y_max, y_of(s.y[i]));
        }
    }
    if (!std::isfinite(x_min))
    {
        x_min = 0;
        x_max = 1;
        y_min = 0;
        y_max = 1;
    }
    if (x_max == x_min) x_max = x_min + 1;
    if (y_max == y_min) y_max = y_min + 1;

    auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return top + (1.0 - (y_of(y) - y_min) / (y_max - y_min)) * plot_h; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width << "\" height=\"" << options.height
        << "\" viewBox=\"0 0 " << options.width << ' ' << options.height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << options.width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"16\">" << options.title << "</text>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    // ticks: 5 per axis
    for (int i = 0; i <= 4; ++i)
    {
        const double fx = x_min + (x_max - x_min) * i / 4.0;
        const double fy = y_min + (y_max - y_min) * i / 4.0;
        const double tx = px(fx);
        const double ty = top + (1.0 - i / 4.0) * plot_h;
        char label[32];
        std::snprintf(label, sizeof(label), "%.3g", fx);
        out << "<text x=\"" << tx << "\" y=\"" << top + plot_h + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << label << "</text>\n";
        std::snprintf(label, sizeof(label), "%.3g", options.log_y ? std::pow(10.0, fy) : fy);
        out << "<text x=\"" << left - 6 << "\" y=\"" << ty + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << label << "</text>\n";
    }
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << options.height - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << options.x_label
        << "</text>\n";
    out << "<text x=\"14\" y=\"" << top + plot_h / 2 << "\" transform=\"rotate(-90 14 " << top + plot_h / 2
        << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << options.y_label
        << (options.log_y ? " (log)" : "") << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si)
    {
        const auto& s = series[si];
        const char* colour = palette[si % (sizeof(palette) / sizeof(palette[0]))];
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i)
        {
            if (!usable(s.x[i], s.y[i])) continue;
            out << (first ? "" : " ") << format_number(px(s.x[i])) << ',' << format_number(py(s.y[i]));
            first = false;
        }
        out << "\"/>\n";
        out << "<text x=\"" << left + 10 << "\" y=\"" << top + 16 + 14 * static_cast<double>(si) << "\" fill=\""
            << colour << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string svg_plot(const DiagnosticsTable& table, const std::vector<std::string>& columns, bool log_y)
{
    std::vector<PlotSeries> series;
    for (const auto& name : columns)
    {
        PlotSeries s;
        s.name = name;
        for (const auto& row : table.rows)
        {
            s.x.push_back(row.key);
            s.y.push_back(column_value(row, table, name));
        }
        series.push_back(std::move(s));
    }
    PlotOptions options;
    options.title = "diagnostics vs " + table.key_name;
    options.x_label = table.key_name;
    options.y_label = "value";
    options.log_y = log_y;
    return svg_line_plot(series, options);
}

void write_text(const std::filesystem::path& path, const std::string& content)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParameterError("cannot open '" + path.string() + "' for writing");
    out << content;
}

}  // namespace gabornc::io
