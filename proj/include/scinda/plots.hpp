#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "scinda/aggregate.hpp"

namespace scinda {

/// One figure: six stacked traces (L1S4 ... TECR) over a shared time axis.
struct PlotPanel {
    std::string name;    // file prefix, e.g. "res1m", "Means1h"
    std::string title;
    std::vector<Timestamp> times;
    std::vector<ParamVector> values;
};

PlotPanel panel_from_series(const MinuteSeries& series, std::string name, std::string title);

enum class StatsField { Mean, Std, Nobs };
PlotPanel panel_from_stats(const HourlyStats& stats, StatsField field, std::string name, std::string title);

struct PlotOutput {
    std::vector<std::filesystem::path> files;
    std::string warning;   // set when nothing was written
};

/// Writes "<name>_<PARAM>.dat" per parameter (header line naming the
/// parameter, then "timestamp value" rows) and "<name>.svg".
PlotOutput emit_plots(const PlotPanel& panel, const std::filesystem::path& out_dir);

/// The 1-minute figure plus the hourly mean, std and Nobs figures for the
/// ALL family.
PlotOutput emit_plots(const MinuteSeries& series, const HourlyStats& stats, const std::filesystem::path& out_dir);

std::string render_svg(const PlotPanel& panel);

} // namespace scinda
