#include "scinda/plots.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "scinda/gzip.hpp"

namespace scinda {

namespace {

constexpr double kWidth = 1000.0;
constexpr double kTraceHeight = 130.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kGap = 20.0;

std::string fmt(const char* f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

} // namespace

PlotPanel panel_from_series(const MinuteSeries& series, std::string name, std::string title)
{
    PlotPanel p{std::move(name), std::move(title), {}, {}};
    p.times.reserve(series.samples.size());
    p.values.reserve(series.samples.size());
    for (const auto& s : series.samples) {
        p.times.push_back(s.time);
        p.values.push_back(s.values);
    }
    return p;
}

PlotPanel panel_from_stats(const HourlyStats& stats, StatsField field, std::string name, std::string title)
{
    PlotPanel p{std::move(name), std::move(title), {}, {}};
    for (const auto& r : stats.rows) {
        p.times.push_back(r.time);
        switch (field) {
        case StatsField::Mean: p.values.push_back(r.mean); break;
        case StatsField::Std: p.values.push_back(r.std); break;
        case StatsField::Nobs: {
            ParamVector v;
            for (std::size_t c = 0; c < kParamCount; ++c)
                v[c] = r.nobs[c];
            p.values.push_back(v);
            break;
        }
        }
    }
    return p;
}

std::string render_svg(const PlotPanel& panel)
{
    const double height = kTop + kParamCount * (kTraceHeight + kGap) + 30.0;
    const double plot_w = kWidth - kLeft - kRight;
    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt("%.0f", kWidth) + "\" height=\"" +
           fmt("%.0f", height) + "\" viewBox=\"0 0 " + fmt("%.0f", kWidth) + " " + fmt("%.0f", height) +
           "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + fmt("%.1f", kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" +
           panel.title + "</text>\n";

    long long t0 = 0;
    long long t1 = 1;
    if (!panel.times.empty()) {
        t0 = panel.times.front().unix_seconds();
        t1 = panel.times.back().unix_seconds();
        if (t1 <= t0)
            t1 = t0 + 1;
    }
    const auto x_of = [&](const Timestamp& t) {
        const double f = static_cast<double>(t.unix_seconds() - t0) / static_cast<double>(t1 - t0);
        return kLeft + (panel.times.size() == 1 ? 0.5 : f) * plot_w;
    };

    for (std::size_t c = 0; c < kParamCount; ++c) {
        const double y_top = kTop + static_cast<double>(c) * (kTraceHeight + kGap);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& v : panel.values)
            if (!is_missing(v[c])) {
                lo = std::min(lo, v[c]);
                hi = std::max(hi, v[c]);
            }
        if (lo > hi) {
            lo = 0.0;
            hi = 1.0;
        }
        if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
        const auto y_of = [&](double v) { return y_top + kTraceHeight - (v - lo) / (hi - lo) * kTraceHeight; };

        svg += "<rect x=\"" + fmt("%.1f", kLeft) + "\" y=\"" + fmt("%.1f", y_top) + "\" width=\"" +
               fmt("%.1f", plot_w) + "\" height=\"" + fmt("%.1f", kTraceHeight) +
               "\" fill=\"none\" stroke=\"#444\"/>\n";
        svg += "<text x=\"10\" y=\"" + fmt("%.1f", y_top + kTraceHeight / 2) + "\">" +
               std::string(kParamNames[c]) + "</text>\n";
        svg += "<text x=\"" + fmt("%.1f", kLeft - 4) + "\" y=\"" + fmt("%.1f", y_top + 10) +
               "\" text-anchor=\"end\" font-size=\"9\">" + fmt("%.4g", hi) + "</text>\n";
        svg += "<text x=\"" + fmt("%.1f", kLeft - 4) + "\" y=\"" + fmt("%.1f", y_top + kTraceHeight) +
               "\" text-anchor=\"end\" font-size=\"9\">" + fmt("%.4g", lo) + "</text>\n";

        // Missing values break the line into separate polylines.
        std::string pts;
        std::size_t npts = 0;
        double x_first = 0.0;
        double y_first = 0.0;
        const auto flush = [&] {
            if (npts == 1)
                svg += "<circle cx=\"" + fmt("%.2f", x_first) + "\" cy=\"" + fmt("%.2f", y_first) +
                       "\" r=\"1.5\" fill=\"#1f4e9c\"/>\n";
            else if (npts > 1)
                svg += "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"0.8\" points=\"" + pts + "\"/>\n";
            pts.clear();
            npts = 0;
        };
        for (std::size_t i = 0; i < panel.values.size(); ++i) {
            const double v = panel.values[i][c];
            if (is_missing(v)) {
                flush();
                continue;
            }
            const double x = x_of(panel.times[i]);
            const double y = y_of(v);
            if (npts == 0) {
                x_first = x;
                y_first = y;
            } else {
                pts += ' ';
            }
            pts += fmt("%.2f", x) + "," + fmt("%.2f", y);
            ++npts;
        }
        flush();
    }
    if (!panel.times.empty()) {
        const double y = height - 10;
        svg += "<text x=\"" + fmt("%.1f", kLeft) + "\" y=\"" + fmt("%.1f", y) + "\">" + panel.times.front().iso() +
               "</text>\n";
        svg += "<text x=\"" + fmt("%.1f", kWidth - kRight) + "\" y=\"" + fmt("%.1f", y) +
               "\" text-anchor=\"end\">" + panel.times.back().iso() + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

PlotOutput emit_plots(const PlotPanel& panel, const std::filesystem::path& out_dir)
{
    PlotOutput out;
    if (panel.times.empty()) {
        out.warning = "no data for plot '" + panel.name + "'; nothing written";
        return out;
    }
    std::filesystem::create_directories(out_dir);
    for (std::size_t c = 0; c < kParamCount; ++c) {
        std::string text(kParamNames[c]);
        text += '\n';
        for (std::size_t i = 0; i < panel.times.size(); ++i) {
            text += panel.times[i].iso();
            text += ' ';
            const double v = panel.values[i][c];
            text += is_missing(v) ? std::string("NaN") : fmt("%.6g", v);
            text += '\n';
        }
        const auto p = out_dir / (panel.name + "_" + std::string(kParamNames[c]) + ".dat");
        gz::write_file(p, text);
        out.files.push_back(p);
    }
    const auto svg = out_dir / (panel.name + ".svg");
    gz::write_file(svg, render_svg(panel));
    out.files.push_back(svg);
    return out;
}

PlotOutput emit_plots(const MinuteSeries& series, const HourlyStats& stats, const std::filesystem::path& out_dir)
{
    PlotOutput all;
    if (series.samples.empty()) {
        all.warning = "empty series; no plots written";
        return all;
    }
    const PlotPanel panels[] = {
        panel_from_series(series, "res1m", "1-minute averages over all satellites"),
        panel_from_stats(stats, StatsField::Mean, "Means1h", "1-hour means over all satellites"),
        panel_from_stats(stats, StatsField::Std, "Std1h", "Standard deviation of 1-hour means"),
        panel_from_stats(stats, StatsField::Nobs, "Nobs1h", "Number of successful observations per hour"),
    };
    for (const auto& p : panels) {
        auto r = emit_plots(p, out_dir);
        all.files.insert(all.files.end(), r.files.begin(), r.files.end());
    }
    return all;
}

} // namespace scinda
