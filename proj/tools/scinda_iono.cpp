// scinda-iono: batch processing of SCINDA GNSS scintillation archives.
//
//   scinda-iono synth --out corpus --seed 7 --year 2015 --month 3 --rates 0.01,0.01,0.02
//   scinda-iono run --root corpus --year 2015 --month 3 --out processed --plots
//
// Exit codes: 0 ok, 1 configuration error, 2 corpus error, 3 partial (gaps).

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scinda/error.hpp"
#include "scinda/gzip.hpp"
#include "scinda/pipeline.hpp"
#include "scinda/plots.hpp"
#include "scinda/synth.hpp"

namespace {

using namespace scinda;
namespace fs = std::filesystem;

struct PeriodOpts {
    int year = 2015;
    int month = 3;
    std::string days;   // "A-B"; empty = whole month

    void add(CLI::App* app)
    {
        app->add_option("--year", year, "Year (4 digits)")->capture_default_str();
        app->add_option("--month", month, "Month 1-12")->capture_default_str();
        app->add_option("--days", days, "Day range A-B inside the month (default: whole month)");
    }

    DayRange range() const
    {
        if (days.empty())
            return DayRange::whole_month(year, month);
        const auto dash = days.find('-');
        if (dash == std::string::npos)
            throw ConfigError("--days expects A-B, got '" + days + "'");
        try {
            return DayRange(year, month, std::stoi(days.substr(0, dash)), std::stoi(days.substr(dash + 1)));
        } catch (const std::invalid_argument&) {
            throw ConfigError("--days expects A-B, got '" + days + "'");
        }
    }
};

struct PolicyOpts {
    std::string policy = "default";
    std::optional<double> min_elevation;
    bool exclude_sbas = false;

    void add(CLI::App* app)
    {
        app->add_option("--policy", policy, "Validity policy: default | strict")
            ->check(CLI::IsMember({"default", "strict"}))
            ->capture_default_str();
        app->add_option("--min-elevation", min_elevation, "Ignore rows below this elevation (deg)");
        app->add_flag("--exclude-sbas", exclude_sbas, "Ignore PRNs >= 100");
    }

    ValidityPolicy get() const
    {
        ValidityPolicy p;
        p.mode = policy == "strict" ? ValidityPolicy::Mode::Strict : ValidityPolicy::Mode::Default;
        p.min_elevation = min_elevation;
        p.exclude_sbas = exclude_sbas;
        return p;
    }
};

void print_warnings(const std::vector<std::string>& warnings)
{
    for (const auto& w : warnings)
        std::cerr << "warning: " << w << '\n';
}

int cmd_scan(const fs::path& root, const PeriodOpts& period)
{
    const auto index = scan_corpus(root, period.range());
    std::cout << index.summary();
    return index.has_gaps() ? kExitPartial : kExitOk;
}

int cmd_preprocess(const fs::path& root, const PeriodOpts& period, const std::string& stages, const fs::path& out,
                   unsigned workers)
{
    const auto range = period.range();
    const auto stage_set = StageSet::parse(stages);
    const auto index = scan_corpus(root, range);
    auto loaded = load_month(index, workers);
    print_warnings(loaded.archive_errors);
    auto pre = preprocess_month(std::move(loaded.buckets), stage_set);
    const OutputLayout layout(stage_set.label(), range);
    const auto files = write_corrected_scn(out, layout, pre.buckets);
    fs::create_directories(out);
    gz::write_file(out / ("CorrectionLog_" + layout.stage_label() + "_" + range.month_tag() + ".txt"),
                   pre.log.report(stage_set));
    std::cout << pre.log.summary(stage_set);
    std::cout << "wrote " << files.size() << " hourly files to " << (out / layout.corrected_scn_folder()).string()
              << '\n';
    return index.has_gaps() || !loaded.archive_errors.empty() ? kExitPartial : kExitOk;
}

int cmd_aggregate(const fs::path& in, const PeriodOpts& period, const std::string& stages, const PolicyOpts& pol,
                  const fs::path& out, bool plots)
{
    const auto range = period.range();
    const auto stage_set = StageSet::parse(stages);
    ParseReport report;
    const auto buckets = load_hourly_scn_dir(in, range, &report);
    const OutputLayout layout(stage_set.label(), range);
    const auto products = build_products(buckets, pol.get());
    auto files = write_month_outputs(out, layout, products);
    write_pair_scn(out, layout, split_per_prn(buckets, pol.get()));
    if (plots) {
        auto p = emit_plots(products.all_1m, products.all_1h,
                            out / ("PLOTS_" + layout.stage_label() + "_" + range.month_tag()));
        if (!p.warning.empty())
            print_warnings({p.warning});
    }
    std::cout << "epochs: " << buckets.epoch_count() << ", satellites: " << products.prns.size() << ", files: "
              << files.size() << '\n';
    return kExitOk;
}

int cmd_plot(const fs::path& dir, const PeriodOpts& period, const std::string& stages, const fs::path& out)
{
    const auto range = period.range();
    const OutputLayout layout(StageSet::parse(stages).label(), range);
    const fs::path target = out.empty() ? dir / ("PLOTS_" + layout.stage_label() + "_" + range.month_tag()) : out;

    const auto minute = read_dat_table(dir / layout.folder(Family::All1m), layout.stem(Family::All1m));
    const fs::path hdir = dir / layout.folder(Family::All1h);
    const std::string hstem = layout.stem(Family::All1h);
    const auto mean = read_dat_table(hdir, hstem);
    const auto sd = read_dat_table(hdir, hstem, "Std");
    const auto nobs = read_dat_table(hdir, hstem, "Nobs");

    const PlotPanel panels[] = {
        {"res1m", "1-minute averages over all satellites", minute.times, minute.values},
        {"Means1h", "1-hour means over all satellites", mean.times, mean.values},
        {"Std1h", "Standard deviation of 1-hour means", sd.times, sd.values},
        {"Nobs1h", "Number of successful observations per hour", nobs.times, nobs.values},
    };
    std::size_t n = 0;
    for (const auto& p : panels) {
        auto r = emit_plots(p, target);
        if (!r.warning.empty())
            print_warnings({r.warning});
        n += r.files.size();
    }
    std::cout << "wrote " << n << " plot files to " << target.string() << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Processing of SCINDA GNSS ionospheric scintillation (.scn) archives"};
    app.set_config("--config", "", "TOML/INI file with default option values (command-line flags win)");
    app.require_subcommand(1);

    fs::path root;
    fs::path out;
    fs::path in;
    std::string stages = "t20,61p,twd";
    unsigned workers = 1;
    bool plots = false;
    PeriodOpts period;
    PolicyOpts policy;

    auto* scan = app.add_subcommand("scan", "Inventory the raw archives of one month");
    scan->add_option("--root", root, "Corpus root containing YYYY/MM-Mon/")->required();
    period.add(scan);

    auto* prep = app.add_subcommand("preprocess", "Apply T20/61p/TwD corrections and write corrected hourly files");
    prep->add_option("--root", root, "Corpus root")->required();
    prep->add_option("--out", out, "Output root")->required();
    prep->add_option("--stages", stages, "Comma-separated subset of t20,61p,twd (or none)")->capture_default_str();
    prep->add_option("--workers", workers, "Extraction threads")->capture_default_str();
    period.add(prep);

    auto* agg = app.add_subcommand("aggregate", "Build the 1-minute and 1-hour families from corrected hourly files");
    agg->add_option("--in", in, "Folder of YMMDD_HH0000.scn[.gz] files")->required();
    agg->add_option("--out", out, "Output root")->required();
    agg->add_option("--stages", stages, "Stages already applied (for folder labels)")->capture_default_str();
    agg->add_flag("--plots", plots, "Also emit plot data and SVG figures");
    period.add(agg);
    policy.add(agg);

    auto* run = app.add_subcommand("run", "Full pipeline for one month");
    run->add_option("--root", root, "Corpus root")->required();
    run->add_option("--out", out, "Output root")->required();
    run->add_option("--stages", stages, "Comma-separated subset of t20,61p,twd (or none)")->capture_default_str();
    run->add_option("--workers", workers, "Extraction threads")->capture_default_str();
    run->add_flag("--plots", plots, "Also emit plot data and SVG figures");
    period.add(run);
    policy.add(run);

    std::uint64_t seed = 1;
    std::string rates = "0,0,0";
    int gps = 8;
    int per_hour = 60;
    bool no_sbas = false;
    bool two_digit = false;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus with injected defects");
    synth->add_option("--out", out, "Corpus root to create")->required();
    synth->add_option("--seed", seed, "RNG seed")->capture_default_str();
    synth->add_option("--rates", rates, "Defect rates T20,61p,TwD in [0,1]")->capture_default_str();
    synth->add_option("--satellites", gps, "Number of GPS satellites")->capture_default_str();
    synth->add_option("--epochs-per-hour", per_hour, "Epochs per hourly file")->capture_default_str();
    synth->add_flag("--no-sbas", no_sbas, "Do not add SBAS PRNs 120 and 126");
    synth->add_flag("--two-digit-year", two_digit, "Name files YYMMDD_HH0000 instead of YMMDD_HH0000");
    period.add(synth);

    auto* plot = app.add_subcommand("plot", "Plot data and SVG figures from a processed output root");
    plot->add_option("--in", in, "Processed output root")->required();
    plot->add_option("--out", out, "Plot folder (default: <in>/PLOTS_<stages>_<YYYY-MM>)");
    plot->add_option("--stages", stages, "Stage label of the outputs to plot")->capture_default_str();
    period.add(plot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*scan)
            return cmd_scan(root, period);
        if (*prep)
            return cmd_preprocess(root, period, stages, out, workers);
        if (*agg)
            return cmd_aggregate(in, period, stages, policy, out, plots);
        if (*plot)
            return cmd_plot(in, period, stages, out);
        if (*run) {
            PipelineConfig cfg;
            cfg.corpus_root = root;
            cfg.range = period.range();
            cfg.stages = StageSet::parse(stages);
            cfg.policy = policy.get();
            cfg.output_root = out;
            cfg.workers = workers;
            cfg.plots = plots;
            const auto r = run_pipeline(cfg);
            print_warnings(r.warnings);
            std::cout << r.corrections.summary(cfg.stages);
            std::cout << "epochs loaded " << r.epochs_loaded << ", kept " << r.epochs_kept << ", satellites "
                      << r.prns.size() << ", files written " << r.written.size() << '\n';
            return r.exit_code;
        }
        if (*synth) {
            SynthConfig cfg;
            cfg.seed = seed;
            cfg.range = period.range();
            double t20 = 0, p61 = 0, twd = 0;
            if (std::sscanf(rates.c_str(), "%lf,%lf,%lf", &t20, &p61, &twd) != 3)
                throw ConfigError("--rates expects three comma-separated numbers");
            cfg.rates = {t20, p61, twd};
            cfg.gps_satellites = gps;
            cfg.epochs_per_hour = per_hour;
            cfg.include_sbas = !no_sbas;
            cfg.year_digits = two_digit ? 2 : 1;
            const auto m = make_synthetic_corpus(out, cfg);
            std::cout << "files " << m.files << ", epochs " << m.epochs << ", injected T20 " << m.t20 << ", 61p "
                      << m.p61 << ", TwD " << m.twd << '\n';
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const CorpusError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCorpus;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCorpus;
    }
    return kExitConfig;
}
