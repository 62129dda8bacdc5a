//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 the cwscat developers.
// SPDX-License-Identifier: Apache-2.0
//----------------------------------------------------------------------------//
//! \file scan.cpp
//----------------------------------------------------------------------------//
#include "cwscat/scan.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cwscat/errors.hpp"
#include "cwscat/parallel.hpp"
#include "cwscat/rutherford.hpp"
#include "cwscat/version.hpp"

namespace cwscat
{
namespace
{

//----------------------------------------------------------------------------//
// Small string utilities
//----------------------------------------------------------------------------//

std::string trim(std::string const& s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
    {
        return {};
    }
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(std::string const& key, std::string const& value)
{
    try
    {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size())
        {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    }
    catch (std::exception const&)
    {
        throw ScenarioError("key '" + key + "': cannot parse '" + value
                            + "' as a number");
    }
}

int to_int(std::string const& key, std::string const& value)
{
    try
    {
        std::size_t pos = 0;
        long v = std::stol(value, &pos);
        if (pos != value.size())
        {
            throw std::invalid_argument("trailing characters");
        }
        return static_cast<int>(v);
    }
    catch (std::exception const&)
    {
        throw ScenarioError("key '" + key + "': cannot parse '" + value
                            + "' as an integer");
    }
}

//! Fetch a key with provenance: stored value if present, else the default
//! (recording it in the store).
std::string take(ConfigStore& store, std::string const& key,
                 std::string const& default_value)
{
    if (store.has(key))
    {
        return store.get(key);
    }
    store.note_default(key, default_value);
    return default_value;
}

double take_double(ConfigStore& store, std::string const& key,
                   std::string const& default_value)
{
    return to_double(key, take(store, key, default_value));
}

int take_int(ConfigStore& store, std::string const& key,
             std::string const& default_value)
{
    return to_int(key, take(store, key, default_value));
}

DeltaPolicy parse_delta_policy(std::string const& text, double fallback_fixed)
{
    DeltaPolicy p;
    if (text == "zero")
    {
        p.kind = DeltaPolicyKind::zero;
    }
    else if (text == "maximize_origin")
    {
        p.kind = DeltaPolicyKind::maximize_origin;
    }
    else if (text == "maximize_per_point")
    {
        p.kind = DeltaPolicyKind::maximize_per_point;
    }
    else if (text == "fixed")
    {
        p.kind = DeltaPolicyKind::fixed;
        p.fixed_value = fallback_fixed;
    }
    else if (text.rfind("fixed:", 0) == 0)
    {
        p.kind = DeltaPolicyKind::fixed;
        p.fixed_value = to_double("delta_policy", text.substr(6));
    }
    else
    {
        throw ScenarioError(
            "key 'delta_policy': expected zero | maximize_origin | "
            "maximize_per_point | fixed[:<value>], got '"
            + text + "'");
    }
    return p;
}

DSource parse_d_source(std::string const& text)
{
    if (text == "exact")
    {
        return DSource::exact;
    }
    if (text == "small_angle")
    {
        return DSource::small_angle;
    }
    if (text == "uniform_m0")
    {
        return DSource::uniform_m0;
    }
    throw ScenarioError(
        "key 'd_source': expected exact | small_angle | uniform_m0, got '"
        + text + "'");
}

//! Inclusive linear grid with steps >= 2.
std::vector<double> linspace(double lo, double hi, int steps)
{
    std::vector<double> g(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
    {
        g[static_cast<std::size_t>(i)]
            = lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
    }
    return g;
}

//! Row delta resolution shared by the pointwise scan commands.
double resolve_row_delta(
    DeltaPolicy const& policy, Scenario const& s,
    std::function<ProbabilityEvaluator(Scenario const&)> const& make)
{
    switch (policy.kind)
    {
        case DeltaPolicyKind::zero:
            return 0.0;
        case DeltaPolicyKind::fixed:
            return policy.fixed_value;
        case DeltaPolicyKind::maximize_per_point: {
            auto ev = make(s);
            return find_delta_max([&](double d) { return ev.at_delta(d); })
                .delta_max;
        }
        case DeltaPolicyKind::maximize_origin:
        default: {
            Scenario o = s;
            o.beta = 0.0;
            o.phi_b = 0.0;
            auto ev = make(o);
            return find_delta_max([&](double d) { return ev.at_delta(d); })
                .delta_max;
        }
    }
}

//----------------------------------------------------------------------------//
// SVG plotting
//----------------------------------------------------------------------------//

struct Series
{
    std::string label;
    std::vector<std::pair<double, double>> points;
};

std::string svg_escape(std::string const& s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '&':
                out += "&amp;";
                break;
            default:
                out += c;
        }
    }
    return out;
}

std::string format_tick(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

//! Minimal line plot; log-scale y when requested (non-positive points skipped).
std::string svg_line_plot(std::string const& title, std::string const& xlabel,
                          std::string const& ylabel, bool logy,
                          std::vector<Series> const& series)
{
    constexpr double width = 760.0;
    constexpr double height = 500.0;
    constexpr double ml = 80.0;
    constexpr double mr = 30.0;
    constexpr double mt = 50.0;
    constexpr double mb = 60.0;

    double xmin = 0.0;
    double xmax = 1.0;
    double ymin = 0.0;
    double ymax = 1.0;
    bool first = true;
    for (auto const& s : series)
    {
        for (auto const& [x, y] : s.points)
        {
            if (logy && !(y > 0.0))
            {
                continue;
            }
            double yy = logy ? std::log10(y) : y;
            if (first)
            {
                xmin = xmax = x;
                ymin = ymax = yy;
                first = false;
            }
            else
            {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, yy);
                ymax = std::max(ymax, yy);
            }
        }
    }
    if (first)
    {
        xmin = ymin = 0.0;
        xmax = ymax = 1.0;
    }
    if (xmax == xmin)
    {
        xmax = xmin + 1.0;
    }
    if (ymax == ymin)
    {
        ymax = ymin + 1.0;
    }

    auto px = [&](double x) {
        return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr);
    };
    auto py = [&](double y) {
        double yy = logy ? std::log10(y) : y;
        return height - mb - (yy - ymin) / (ymax - ymin) * (height - mt - mb);
    };

    static char const* palette[]
        = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
       << height << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"16\">"
       << svg_escape(title) << "</text>\n";

    // Axes box and ticks.
    os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\""
       << width - ml - mr << "\" height=\"" << height - mt - mb
       << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int t = 0; t <= 5; ++t)
    {
        double fx = xmin + (xmax - xmin) * t / 5.0;
        double fy = ymin + (ymax - ymin) * t / 5.0;
        double gx = px(fx);
        double gy = height - mb - (fy - ymin) / (ymax - ymin)
                    * (height - mt - mb);
        os << "<line x1=\"" << gx << "\" y1=\"" << height - mb << "\" x2=\""
           << gx << "\" y2=\"" << height - mb + 5 << "\" stroke=\"#444\"/>\n"
           << "<text x=\"" << gx << "\" y=\"" << height - mb + 20
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
              "font-size=\"11\">"
           << format_tick(fx) << "</text>\n"
           << "<line x1=\"" << ml - 5 << "\" y1=\"" << gy << "\" x2=\"" << ml
           << "\" y2=\"" << gy << "\" stroke=\"#444\"/>\n"
           << "<text x=\"" << ml - 8 << "\" y=\"" << gy + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
              "font-size=\"11\">"
           << (logy ? "1e" + format_tick(fy) : format_tick(fy))
           << "</text>\n";
    }
    os << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 15
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"13\">"
       << svg_escape(xlabel) << "</text>\n"
       << "<text x=\"20\" y=\"" << (mt + height - mb) / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"13\" transform=\"rotate(-90 20 "
       << (mt + height - mb) / 2 << ")\">" << svg_escape(ylabel)
       << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si)
    {
        char const* color = palette[si % 5];
        std::ostringstream pts;
        bool open = false;
        for (auto const& [x, y] : series[si].points)
        {
            if (logy && !(y > 0.0))
            {
                continue;
            }
            pts << (open ? " " : "") << px(x) << "," << py(y);
            open = true;
        }
        os << "<polyline fill=\"none\" stroke=\"" << color
           << "\" stroke-width=\"1.5\" points=\"" << pts.str() << "\"/>\n";
        double lx = width - mr - 170;
        double ly = mt + 18 + 18 * static_cast<double>(si);
        os << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\""
           << lx + 24 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n"
           << "<text x=\"" << lx + 30 << "\" y=\"" << ly
           << "\" font-family=\"sans-serif\" font-size=\"12\">"
           << svg_escape(series[si].label) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

//! Minimal heatmap over a rectangular (x, y) grid of positive values,
//! colored by normalized log10.
std::string svg_heatmap(std::string const& title, std::string const& xlabel,
                        std::string const& ylabel,
                        std::vector<double> const& xs,
                        std::vector<double> const& ys,
                        std::vector<double> const& vals)
{
    constexpr double width = 760.0;
    constexpr double height = 540.0;
    constexpr double ml = 80.0;
    constexpr double mr = 30.0;
    constexpr double mt = 50.0;
    constexpr double mb = 60.0;
    auto nx = xs.size();
    auto ny = ys.size();

    double vmax = 0.0;
    for (double v : vals)
    {
        vmax = std::max(vmax, v);
    }
    double lmax = vmax > 0.0 ? std::log10(vmax) : 0.0;
    double lmin = lmax - 12.0;  // floor the dynamic range

    auto color = [&](double v) {
        double t = 0.0;
        if (v > 0.0)
        {
            t = std::clamp((std::log10(v) - lmin) / (lmax - lmin), 0.0, 1.0);
        }
        // Three-stop gradient: deep blue -> teal -> yellow.
        double r;
        double g;
        double b;
        if (t < 0.5)
        {
            double u = t / 0.5;
            r = 25 + u * (38 - 25);
            g = 25 + u * (140 - 25);
            b = 80 + u * (140 - 80);
        }
        else
        {
            double u = (t - 0.5) / 0.5;
            r = 38 + u * (253 - 38);
            g = 140 + u * (231 - 140);
            b = 140 + u * (37 - 140);
        }
        char buf[16];
        std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                      static_cast<int>(r), static_cast<int>(g),
                      static_cast<int>(b));
        return std::string(buf);
    };

    double cw = (width - ml - mr) / static_cast<double>(nx);
    double ch = (height - mt - mb) / static_cast<double>(ny);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
       << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
       << height << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"16\">"
       << svg_escape(title) << "</text>\n";
    for (std::size_t iy = 0; iy < ny; ++iy)
    {
        for (std::size_t ix = 0; ix < nx; ++ix)
        {
            double v = vals[iy * nx + ix];
            os << "<rect x=\"" << ml + cw * static_cast<double>(ix)
               << "\" y=\""
               << height - mb - ch * static_cast<double>(iy + 1)
               << "\" width=\"" << cw + 0.5 << "\" height=\"" << ch + 0.5
               << "\" fill=\"" << color(v) << "\"/>\n";
        }
    }
    // Corner labels for the axis ranges.
    os << "<text x=\"" << ml << "\" y=\"" << height - mb + 20
       << "\" font-family=\"sans-serif\" font-size=\"11\">"
       << format_tick(xs.front()) << "</text>\n"
       << "<text x=\"" << width - mr << "\" y=\"" << height - mb + 20
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
          "font-size=\"11\">"
       << format_tick(xs.back()) << "</text>\n"
       << "<text x=\"" << ml - 8 << "\" y=\"" << height - mb
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
          "font-size=\"11\">"
       << format_tick(ys.front()) << "</text>\n"
       << "<text x=\"" << ml - 8 << "\" y=\"" << mt + 10
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
          "font-size=\"11\">"
       << format_tick(ys.back()) << "</text>\n"
       << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 15
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"13\">"
       << svg_escape(xlabel) << "</text>\n"
       << "<text x=\"20\" y=\"" << (mt + height - mb) / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"13\" transform=\"rotate(-90 20 "
       << (mt + height - mb) / 2 << ")\">" << svg_escape(ylabel)
       << "</text>\n</svg>\n";
    return os.str();
}

//! Build the SVG body for a computed scan, or empty if not plottable.
std::string render_svg(ScanSpec const& spec, ScanResult const& res)
{
    switch (spec.command)
    {
        case Command::shadow_zone: {
            Series model{"model", {}};
            Series ruth{"classical", {}};
            for (auto const& r : res.rows)
            {
                model.points.emplace_back(r[0], r[1]);
                ruth.points.emplace_back(r[0], r[2]);
            }
            return svg_line_plot("transition probability vs angle", "theta",
                                 "log10 P", true, {model, ruth});
        }
        case Command::forward_vs_beta: {
            Series f{"forward", {}};
            for (auto const& r : res.rows)
            {
                f.points.emplace_back(r[0], r[1]);
            }
            return svg_line_plot("forward probability vs impact parameter",
                                 "beta", "P", false, {f});
        }
        case Command::lm_density: {
            std::set<double> ls;
            std::set<double> ms;
            for (auto const& r : res.rows)
            {
                ls.insert(r[0]);
                ms.insert(r[1]);
            }
            std::vector<double> xs(ls.begin(), ls.end());
            std::vector<double> ys(ms.begin(), ms.end());
            std::vector<double> vals(xs.size() * ys.size(), 0.0);
            for (auto const& r : res.rows)
            {
                auto ix = static_cast<std::size_t>(
                    std::lower_bound(xs.begin(), xs.end(), r[0])
                    - xs.begin());
                auto iy = static_cast<std::size_t>(
                    std::lower_bound(ys.begin(), ys.end(), r[1])
                    - ys.begin());
                vals[iy * xs.size() + ix] = r[2];
            }
            return svg_heatmap("channel density of the free wavepacket", "l",
                               "m", xs, ys, vals);
        }
        case Command::beta_phi_profile: {
            std::set<double> bs;
            std::set<double> ps;
            for (auto const& r : res.rows)
            {
                bs.insert(r[0]);
                ps.insert(r[1]);
            }
            std::vector<double> xs(bs.begin(), bs.end());
            std::vector<double> ys(ps.begin(), ps.end());
            std::vector<double> vals(xs.size() * ys.size(), 0.0);
            for (auto const& r : res.rows)
            {
                auto ix = static_cast<std::size_t>(
                    std::lower_bound(xs.begin(), xs.end(), r[0])
                    - xs.begin());
                auto iy = static_cast<std::size_t>(
                    std::lower_bound(ys.begin(), ys.end(), r[1])
                    - ys.begin());
                vals[iy * xs.size() + ix] = r[2];
            }
            return svg_heatmap("probability over the impact plane", "beta",
                               "phi", xs, ys, vals);
        }
        case Command::averaged_points: {
            Series avg{"averaged", {}};
            Series ruth{"classical", {}};
            for (auto const& r : res.rows)
            {
                avg.points.emplace_back(r[0], r[1]);
                ruth.points.emplace_back(r[0], r[2]);
            }
            return svg_line_plot("impact-averaged probability vs angle",
                                 "theta", "log10 P", true, {avg, ruth});
        }
        case Command::physical_map:
        default:
            return {};
    }
}

}  // namespace

//----------------------------------------------------------------------------//
// Command names
//----------------------------------------------------------------------------//

std::string to_string(Command c)
{
    switch (c)
    {
        case Command::shadow_zone:
            return "shadow_zone";
        case Command::forward_vs_beta:
            return "forward_vs_beta";
        case Command::lm_density:
            return "lm_density";
        case Command::beta_phi_profile:
            return "beta_phi_profile";
        case Command::averaged_points:
            return "averaged_points";
        case Command::physical_map:
            return "physical_map";
    }
    return "unknown";
}

Command command_from_string(std::string const& name)
{
    for (Command c : {Command::shadow_zone, Command::forward_vs_beta,
                      Command::lm_density, Command::beta_phi_profile,
                      Command::averaged_points, Command::physical_map})
    {
        if (to_string(c) == name)
        {
            return c;
        }
    }
    throw ScenarioError("unknown command '" + name + "'");
}

//----------------------------------------------------------------------------//
// ConfigStore
//----------------------------------------------------------------------------//

bool ConfigStore::known_key(std::string const& key)
{
    static std::set<std::string> const registry{
        "eta",          "eps",        "beta",        "phi_b",
        "theta",        "delta",      "z1",          "z2",
        "energy_mev",   "mass_mev",   "axis",        "axis_lo",
        "axis_hi",      "axis_steps", "phi_steps",   "l_stride",
        "delta_policy", "d_source",   "window_sigmas", "m_cut",
        "term_floor",   "beta_max",   "n_beta",      "n_phi",
        "out",          "format",     "threads"};
    return registry.count(key) != 0;
}

void ConfigStore::set_from_config(std::string const& key,
                                  std::string const& value, int line)
{
    if (!known_key(key))
    {
        std::ostringstream os;
        os << "config: unknown key '" << key << "' (line " << line << ")";
        throw ScenarioError(os.str());
    }
    auto it = config_lines_.find(key);
    if (it != config_lines_.end())
    {
        std::ostringstream os;
        os << "config: duplicate key '" << key << "' (lines " << it->second
           << " and " << line << ")";
        throw ScenarioError(os.str());
    }
    config_lines_[key] = line;
    values_[key] = value;
    std::ostringstream origin;
    origin << "config(line " << line << ")";
    origins_[key] = origin.str();
}

void ConfigStore::set_from_flag(std::string const& key,
                                std::string const& value)
{
    if (!known_key(key))
    {
        throw ScenarioError("unknown parameter key '" + key + "'");
    }
    values_[key] = value;
    origins_[key] = "flag";
}

bool ConfigStore::has(std::string const& key) const
{
    auto it = origins_.find(key);
    return it != origins_.end() && it->second != "default";
}

std::string const& ConfigStore::get(std::string const& key) const
{
    auto it = values_.find(key);
    if (it == values_.end())
    {
        throw ScenarioError("internal: parameter '" + key + "' not set");
    }
    return it->second;
}

std::string ConfigStore::origin(std::string const& key) const
{
    auto it = origins_.find(key);
    return it == origins_.end() ? "unset" : it->second;
}

void ConfigStore::note_default(std::string const& key,
                               std::string const& value)
{
    if (values_.count(key) != 0)
    {
        return;
    }
    values_[key] = value;
    origins_[key] = "default";
}

//----------------------------------------------------------------------------//
ConfigStore parse_config(std::string const& path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ScenarioError("cannot open config file: " + path);
    }
    ConfigStore store;
    std::string line;
    int number = 0;
    while (std::getline(in, line))
    {
        ++number;
        auto hash = line.find('#');
        if (hash != std::string::npos)
        {
            line = line.substr(0, hash);
        }
        std::string body = trim(line);
        if (body.empty())
        {
            continue;
        }
        auto eq = body.find('=');
        if (eq == std::string::npos)
        {
            std::ostringstream os;
            os << "config line " << number << ": expected key=value, got '"
               << body << "'";
            throw ScenarioError(os.str());
        }
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (key.empty())
        {
            std::ostringstream os;
            os << "config line " << number << ": empty key";
            throw ScenarioError(os.str());
        }
        store.set_from_config(key, value, number);
    }
    return store;
}

//----------------------------------------------------------------------------//
ScanSpec resolve_spec(Command command, ConfigStore& store)
{
    ScanSpec spec;
    spec.command = command;

    // Per-command sweep axis and defaults.
    std::string expected_axis;
    std::string lo_default;
    std::string hi_default;
    std::string steps_default;
    std::string policy_default = "maximize_origin";
    std::string beta_default = "0";
    std::string theta_default = "0.1";
    switch (command)
    {
        case Command::shadow_zone:
            expected_axis = "theta";
            lo_default = "0.001";
            hi_default = "0.5";
            steps_default = "200";
            policy_default = "maximize_per_point";
            break;
        case Command::forward_vs_beta:
            expected_axis = "beta";
            lo_default = "10";
            hi_default = "250";
            steps_default = "25";
            policy_default = "fixed:0";
            break;
        case Command::lm_density:
            beta_default = "10";
            break;
        case Command::beta_phi_profile:
            expected_axis = "beta";
            lo_default = "0";
            hi_default = "3";
            steps_default = "31";
            policy_default = "maximize_origin";
            break;
        case Command::averaged_points:
            expected_axis = "theta";
            lo_default = "0.1";
            hi_default = "0.2";
            steps_default = "3";
            policy_default = "maximize_per_point";
            break;
        case Command::physical_map:
            break;
    }

    if (expected_axis.empty())
    {
        for (auto const& key : {"axis", "axis_lo", "axis_hi", "axis_steps"})
        {
            if (store.has(key))
            {
                throw ScenarioError("command '" + to_string(command)
                                    + "' has no sweep axis; key '" + key
                                    + "' is not applicable");
            }
        }
    }
    else
    {
        spec.axis = take(store, "axis", expected_axis);
        if (spec.axis != expected_axis)
        {
            throw ScenarioError("command '" + to_string(command)
                                + "' sweeps '" + expected_axis + "'; axis '"
                                + spec.axis + "' is not valid");
        }
        spec.axis_lo = take_double(store, "axis_lo", lo_default);
        spec.axis_hi = take_double(store, "axis_hi", hi_default);
        spec.axis_steps = take_int(store, "axis_steps", steps_default);
        if (spec.axis_steps < 2)
        {
            std::ostringstream os;
            os << "key 'axis_steps': grids need at least 2 steps, got "
               << spec.axis_steps;
            throw ScenarioError(os.str());
        }
        if (!(spec.axis_hi > spec.axis_lo))
        {
            throw ScenarioError(
                "keys 'axis_lo'/'axis_hi': need axis_hi > axis_lo");
        }
    }

    spec.eta = take_double(store, "eta", "22.8");
    spec.eps = take_double(store, "eps", "0.001");
    spec.beta = take_double(store, "beta", beta_default);
    spec.phi_b = take_double(store, "phi_b", "0");
    spec.theta = take_double(store, "theta", theta_default);
    spec.delta = take_double(store, "delta", "0");
    spec.z1 = take_int(store, "z1", "79");
    spec.z2 = take_int(store, "z2", "2");
    spec.energy_mev = take_double(store, "energy_mev", "4.8");
    spec.mass_mev = take_double(store, "mass_mev", "3727.379");
    spec.phi_steps = take_int(store, "phi_steps", "16");
    spec.l_stride = take_int(store, "l_stride", "10");
    spec.delta_policy
        = parse_delta_policy(take(store, "delta_policy", policy_default),
                             spec.delta);
    spec.d_source = parse_d_source(take(store, "d_source", "exact"));
    spec.trunc.window_sigmas = take_double(store, "window_sigmas", "6");
    spec.trunc.m_cut = take_int(store, "m_cut", "-1");
    spec.trunc.term_floor = take_double(store, "term_floor", "1e-14");
    spec.quad.beta_max = take_double(store, "beta_max", "3");
    spec.quad.n_beta = take_int(store, "n_beta", "32");
    spec.quad.n_phi = take_int(store, "n_phi", "16");
    spec.quad.delta_policy = spec.delta_policy;
    std::string out_default
        = command == Command::physical_map ? "" : to_string(command) + ".csv";
    spec.out_path = take(store, "out", out_default);
    std::string fmt = take(store, "format", "csv");
    if (fmt == "csv")
    {
        spec.format = OutputFormat::csv;
    }
    else if (fmt == "csv+svg")
    {
        spec.format = OutputFormat::csv_svg;
    }
    else
    {
        throw ScenarioError("key 'format': expected csv | csv+svg, got '"
                            + fmt + "'");
    }
    spec.threads = take_int(store, "threads", "0");

    // Field validation.
    if (!(spec.eps > 0.0) || spec.eps > 0.1)
    {
        std::ostringstream os;
        os << "key 'eps': " << spec.eps << " outside (0, 0.1]";
        throw ScenarioError(os.str());
    }
    if (!(spec.beta >= 0.0)
        || spec.beta > (1.0 / std::sqrt(spec.eps)) * (1.0 + 1e-12))
    {
        std::ostringstream os;
        os << "key 'beta': " << spec.beta
           << " outside [0, 1/sqrt(eps)]";
        throw ScenarioError(os.str());
    }
    if (!(spec.theta >= 0.0) || spec.theta > std::numbers::pi * (1.0 + 1e-12))
    {
        std::ostringstream os;
        os << "key 'theta': " << spec.theta << " outside [0, pi]";
        throw ScenarioError(os.str());
    }
    if (spec.phi_steps < 2 && command == Command::beta_phi_profile)
    {
        throw ScenarioError("key 'phi_steps': grids need at least 2 steps");
    }
    if (spec.l_stride < 1)
    {
        throw ScenarioError("key 'l_stride': must be >= 1");
    }
    if (spec.threads < 0)
    {
        throw ScenarioError("key 'threads': must be >= 0 (0 = auto)");
    }
    spec.trunc.validate();
    if (command == Command::averaged_points)
    {
        spec.quad.validate(spec.eps);
    }
    if (command == Command::forward_vs_beta
        && (spec.delta_policy.kind == DeltaPolicyKind::maximize_origin
            || spec.delta_policy.kind == DeltaPolicyKind::maximize_per_point))
    {
        throw ScenarioError(
            "key 'delta_policy': the forward scan supports zero | "
            "fixed[:<value>] only");
    }
    return spec;
}

//----------------------------------------------------------------------------//
std::string format_csv_value(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

//----------------------------------------------------------------------------//
ScanResult run_scan(ScanSpec const& spec, ConfigStore const* store)
{
    auto t0 = std::chrono::steady_clock::now();
    ScanResult res;

    switch (spec.command)
    {
        case Command::shadow_zone: {
            res.header = {"theta", "p_model", "p_ruth", "delta_used"};
            auto grid = linspace(spec.axis_lo, spec.axis_hi, spec.axis_steps);
            res.rows.assign(grid.size(), {});
            // One phase table covers every row: the l-window depends on
            // (eta, eps, beta) but not on theta. Union with the origin
            // window so the origin delta policy is evaluable.
            auto [lo0, hi0] = l_window(0.0, spec.eps,
                                       spec.trunc.window_sigmas);
            auto [lob, hib] = l_window(spec.beta, spec.eps,
                                       spec.trunc.window_sigmas);
            auto table = build_phase_table_range(spec.eta, spec.eps,
                                                 std::min(lo0, lob),
                                                 std::max(hi0, hib));
            parallel_for(
                static_cast<std::int64_t>(grid.size()), spec.threads,
                [&](std::int64_t i) {
                    double th = grid[static_cast<std::size_t>(i)];
                    Scenario s{spec.eta, spec.eps,  spec.beta,
                               spec.phi_b, th, spec.delta};
                    auto make = [&](Scenario const& sc) {
                        return ProbabilityEvaluator(sc, table, spec.trunc,
                                                    spec.d_source);
                    };
                    double delta = resolve_row_delta(spec.delta_policy, s,
                                                     make);
                    double p = make(s).at_delta(delta);
                    res.rows[static_cast<std::size_t>(i)]
                        = {th,
                           p,
                           rutherford_probability(th, spec.eta, spec.eps),
                           delta};
                });
            break;
        }
        case Command::forward_vs_beta: {
            res.header = {"beta", "p_forward", "delta_used"};
            auto grid = linspace(spec.axis_lo, spec.axis_hi, spec.axis_steps);
            res.rows.assign(grid.size(), {});
            double delta = spec.delta_policy.kind == DeltaPolicyKind::fixed
                               ? spec.delta_policy.fixed_value
                               : 0.0;
            parallel_for(static_cast<std::int64_t>(grid.size()), spec.threads,
                         [&](std::int64_t i) {
                             double b = grid[static_cast<std::size_t>(i)];
                             auto r = probability_forward(spec.eta, b,
                                                          spec.eps, delta,
                                                          spec.trunc);
                             res.rows[static_cast<std::size_t>(i)]
                                 = {b, r.value, r.delta_used};
                         });
            break;
        }
        case Command::lm_density: {
            res.header = {"l", "m", "density"};
            Scenario s{spec.eta, spec.eps, spec.beta,
                       spec.phi_b, spec.theta, spec.delta};
            auto ld = lm_density(s, spec.trunc);
            for (std::int64_t l = ld.l_lo; l <= ld.l_hi; l += spec.l_stride)
            {
                for (int m = -ld.m_cut; m <= ld.m_cut; ++m)
                {
                    res.rows.push_back({static_cast<double>(l),
                                        static_cast<double>(m),
                                        ld.at(l, m)});
                }
            }
            break;
        }
        case Command::beta_phi_profile: {
            res.header = {"beta", "phi", "p_model", "delta_used"};
            auto grid = linspace(spec.axis_lo, spec.axis_hi, spec.axis_steps);
            bool small = spec.theta <= 0.5;
            // Master table over the union of the row windows and the origin.
            auto [lo_m, hi_m] = l_window(0.0, spec.eps,
                                         spec.trunc.window_sigmas);
            int mc_max = spec.trunc.resolved_m_cut(0.0);
            for (double b : grid)
            {
                auto [lo, hi] = l_window(b, spec.eps,
                                         spec.trunc.window_sigmas);
                lo_m = std::min(lo_m, lo);
                hi_m = std::max(hi_m, hi);
                mc_max = std::max(mc_max, spec.trunc.resolved_m_cut(b));
            }
            auto table = build_phase_table_range(spec.eta, spec.eps, lo_m,
                                                 hi_m);
            std::unique_ptr<specfun::WignerDTable> dtab;
            if (!small)
            {
                dtab = std::make_unique<specfun::WignerDTable>(spec.theta,
                                                               mc_max, hi_m);
            }
            auto make = [&](Scenario const& sc) {
                return small ? ProbabilityEvaluator::bracket_form(sc, table,
                                                                  spec.trunc)
                             : ProbabilityEvaluator(sc, table, spec.trunc,
                                                    DSource::exact,
                                                    dtab.get());
            };
            // Hold value for the origin policy, shared by all rows.
            double delta_hold = 0.0;
            if (spec.delta_policy.kind == DeltaPolicyKind::maximize_origin)
            {
                Scenario o{spec.eta, spec.eps, 0.0, 0.0, spec.theta, 0.0};
                auto ev = make(o);
                delta_hold
                    = find_delta_max([&](double d) { return ev.at_delta(d); })
                          .delta_max;
            }
            else if (spec.delta_policy.kind == DeltaPolicyKind::fixed)
            {
                delta_hold = spec.delta_policy.fixed_value;
            }
            res.rows.assign(grid.size() * static_cast<std::size_t>(
                                spec.phi_steps),
                            {});
            parallel_for(
                static_cast<std::int64_t>(grid.size()), spec.threads,
                [&](std::int64_t i) {
                    double b = grid[static_cast<std::size_t>(i)];
                    for (int j = 0; j < spec.phi_steps; ++j)
                    {
                        double phi = 2.0 * std::numbers::pi * j
                                     / spec.phi_steps;
                        Scenario s{spec.eta, spec.eps, b, phi, spec.theta,
                                   0.0};
                        auto ev = make(s);
                        double delta = delta_hold;
                        if (spec.delta_policy.kind
                            == DeltaPolicyKind::maximize_per_point)
                        {
                            delta = find_delta_max([&](double d) {
                                        return ev.at_delta(d);
                                    }).delta_max;
                        }
                        res.rows[static_cast<std::size_t>(i)
                                     * static_cast<std::size_t>(
                                         spec.phi_steps)
                                 + static_cast<std::size_t>(j)]
                            = {b, phi, ev.at_delta(delta), delta};
                    }
                });
            break;
        }
        case Command::averaged_points: {
            res.header = {"theta", "p_avg", "p_ruth", "ratio", "delta_used"};
            auto grid = linspace(spec.axis_lo, spec.axis_hi, spec.axis_steps);
            QuadratureSpec quad = spec.quad;
            quad.delta_policy = spec.delta_policy;
            for (double th : grid)
            {
                auto r = average_over_impact(th, spec.eta, spec.eps, quad,
                                             spec.trunc,
                                             AveragingKernel::automatic,
                                             spec.threads);
                double ruth
                    = rutherford_probability(th, spec.eta, spec.eps);
                res.rows.push_back(
                    {th, r.value, ruth, r.value / ruth, r.delta_used});
            }
            break;
        }
        case Command::physical_map: {
            res.header = {"eta",       "p_momentum_mev", "sigma_x_angstrom",
                          "r_angstrom", "theta_dev",     "theta_unity",
                          "delta_t0"};
            PhysicalParams pp{spec.z1, spec.z2, spec.energy_mev,
                              spec.mass_mev, spec.eps};
            auto map = scenario_from_physical(pp);
            double eta = map.scenario.eta;
            res.rows.push_back(
                {eta, map.p_momentum, map.sigma_x, map.big_r,
                 theta_deviation(eta, spec.eps),
                 spec.eps * std::sqrt(8.0 * std::abs(eta)),
                 delta_of_time(0.0, map, pp)});
            break;
        }
    }

    // Emission.
    if (!spec.out_path.empty())
    {
        std::ofstream csv(spec.out_path);
        if (!csv)
        {
            throw std::runtime_error("cannot write output file: "
                                     + spec.out_path);
        }
        for (std::size_t i = 0; i < res.header.size(); ++i)
        {
            csv << (i ? "," : "") << res.header[i];
        }
        csv << "\n";
        for (auto const& row : res.rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
            {
                csv << (i ? "," : "") << format_csv_value(row[i]);
            }
            csv << "\n";
        }
        csv.close();
        if (!csv)
        {
            throw std::runtime_error("cannot write output file: "
                                     + spec.out_path);
        }
        res.csv_path = spec.out_path;

        double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        nlohmann::json meta;
        meta["command"] = to_string(spec.command);
        meta["library_version"] = version_string;
        meta["wall_time_seconds"] = wall;
        meta["row_count"] = res.rows.size();
        meta["header"] = res.header;
        nlohmann::json params = nlohmann::json::object();
        if (store != nullptr)
        {
            for (auto const& [key, value] : store->values())
            {
                params[key] = {{"value", value},
                               {"origin", store->origin(key)}};
            }
        }
        meta["parameters"] = params;
        meta["outputs"]["csv"] = res.csv_path;

        if (spec.format == OutputFormat::csv_svg)
        {
            std::string body = render_svg(spec, res);
            if (!body.empty())
            {
                std::string svg_path = spec.out_path + ".svg";
                std::ofstream svg(svg_path);
                if (!svg)
                {
                    throw std::runtime_error("cannot write output file: "
                                             + svg_path);
                }
                svg << body;
                res.svg_path = svg_path;
                meta["outputs"]["svg"] = svg_path;
            }
        }

        res.meta_path = spec.out_path + ".meta.json";
        std::ofstream mf(res.meta_path);
        if (!mf)
        {
            throw std::runtime_error("cannot write output file: "
                                     + res.meta_path);
        }
        mf << meta.dump(2) << "\n";
    }
    return res;
}

}  // namespace cwscat
