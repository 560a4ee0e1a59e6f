#include "scinda/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "scinda/error.hpp"
#include "scinda/gzip.hpp"
#include "scinda/plots.hpp"

namespace scinda {

namespace fs = std::filesystem;

namespace {

struct FileResult {
    ParseResult parsed;
    std::string error;
    bool ok = false;
};

} // namespace

LoadedMonth load_month(const CorpusIndex& index, unsigned workers)
{
    const auto entries = index.processable_scn();
    std::vector<FileResult> results(entries.size());
    std::atomic<std::size_t> next{0};

    const auto work = [&] {
        for (std::size_t i = next++; i < entries.size(); i = next++) {
            try {
                results[i].parsed = parse_scn(extract(entries[i]));
                results[i].ok = true;
            } catch (const Error& e) {
                results[i].error = e.what();
            }
        }
    };
    const unsigned n = std::clamp<unsigned>(workers, 1, 64);
    if (n == 1 || entries.size() < 2) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n; ++t)
            pool.emplace_back(work);
    }

    LoadedMonth month{MonthBuckets(index.range), {}, {}};
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto& r = results[i];
        if (!r.ok) {
            month.archive_errors.push_back(r.error);
            continue;
        }
        month.parse += r.parsed.report;
        auto& bucket = month.buckets.hours[entries[i].key.hour_key()];
        bucket.insert(bucket.end(), std::make_move_iterator(r.parsed.epochs.begin()),
                      std::make_move_iterator(r.parsed.epochs.end()));
    }
    return month;
}

MonthProducts build_products(const MonthBuckets& buckets, const ValidityPolicy& policy)
{
    MonthProducts p;
    p.all_1m = build_all_series(buckets, policy);
    p.all_1h = hourly_stats(p.all_1m, buckets.range);
    const auto tracks = split_per_prn(buckets, policy);
    p.prns = sat_list(tracks);
    for (int prn : p.prns) {
        p.sats_1m.push_back(prn_series(prn, tracks.at(prn), policy));
        p.sats_1h.push_back(hourly_stats(p.sats_1m.back(), buckets.range));
    }
    return p;
}

std::string month_readme(const PipelineConfig& cfg, const CorpusIndex& index, const PipelineResult& r,
                         const RotiCheck& roti)
{
    std::ostringstream os;
    os << "SCINDA scintillation data, processed " << cfg.range.month_tag() << " days " << cfg.range.day_tag()
       << "\n\n";
    os << "Preprocessing stages: " << cfg.stages.label() << '\n';
    os << "Validity policy: " << (cfg.policy.mode == ValidityPolicy::Mode::Strict ? "strict" : "default");
    if (cfg.policy.min_elevation)
        os << ", elevation mask " << *cfg.policy.min_elevation << " deg";
    if (cfg.policy.exclude_sbas)
        os << ", SBAS PRNs excluded";
    os << "\n\nData columns (1..6): L1S4 L2S4 TECP TECF ROTI TECR\n";
    os << "DATES-TIMES columns (1..6): year month day hour seconds-of-day fraction-of-day\n";
    os << "Missing values are written as NaN.\n\n";
    os << "Inventory\n" << index.summary() << '\n';
    os << "Parsing\n";
    os << "epoch headers: " << r.parse.epochs_ok << " ok, " << r.parse.epochs_malformed << " malformed\n";
    os << "observation rows: " << r.parse.observation_lines << '\n';
    os << "skipped lines: " << r.parse.lines_skipped << "\n\n";
    os << "Corrections\n" << r.corrections.summary(cfg.stages) << '\n';
    os << "Epochs loaded: " << r.epochs_loaded << ", kept: " << r.epochs_kept << '\n';
    os << "Satellites: " << r.prns.size() << " (see SATs_LIST_UNIQUEs file)\n";
    if (roti.pairs > 0) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "ROTI check: mean ROTI %.4g vs mean |dTECR|/dt %.4g TECU/min over %zu pairs\n",
                      roti.mean_roti, roti.mean_dtecr, roti.pairs);
        os << buf;
    }
    if (!r.warnings.empty()) {
        os << "\nWarnings\n";
        for (const auto& w : r.warnings)
            os << "- " << w << '\n';
    }
    return os.str();
}

PipelineResult run_pipeline(const PipelineConfig& cfg)
{
    if (cfg.output_root.empty())
        throw ConfigError("output root not set");
    const CorpusIndex index = scan_corpus(cfg.corpus_root, cfg.range);

    std::error_code ec;
    fs::create_directories(cfg.output_root, ec);
    if (ec || !fs::is_directory(cfg.output_root))
        throw ConfigError("cannot create output root " + cfg.output_root.string());

    PipelineResult r;
    auto loaded = load_month(index, cfg.workers);
    r.parse = loaded.parse;
    r.epochs_loaded = loaded.buckets.epoch_count();
    for (const auto& e : loaded.archive_errors)
        r.warnings.push_back("unreadable archive: " + e);
    for (const auto& e : index.flagged_scn())
        r.warnings.push_back("flagged archive " + e.key.file_name() + ": " + std::string(status_name(e.status)));
    if (!index.missing_scn.empty())
        r.warnings.push_back(std::to_string(index.missing_scn.size()) + " hourly .scn archives missing");

    auto pre = preprocess_month(std::move(loaded.buckets), cfg.stages);
    r.corrections = pre.log;
    r.epochs_kept = pre.buckets.epoch_count();

    const OutputLayout layout(cfg.stages.label(), cfg.range);
    const auto products = build_products(pre.buckets, cfg.policy);
    r.prns = products.prns;
    r.written = write_month_outputs(cfg.output_root, layout, products);

    const auto tracks = split_per_prn(pre.buckets, cfg.policy);
    if (cfg.write_corrected_scn) {
        auto w = write_corrected_scn(cfg.output_root, layout, pre.buckets);
        r.written.insert(r.written.end(), w.begin(), w.end());
    }
    if (cfg.write_pair_scn) {
        auto w = write_pair_scn(cfg.output_root, layout, tracks);
        r.written.insert(r.written.end(), w.begin(), w.end());
    }
    if (cfg.plots) {
        auto plots = emit_plots(products.all_1m, products.all_1h,
                                cfg.output_root / ("PLOTS_" + layout.stage_label() + "_" + cfg.range.month_tag()));
        if (!plots.warning.empty())
            r.warnings.push_back(plots.warning);
        r.written.insert(r.written.end(), plots.files.begin(), plots.files.end());
    }

    const fs::path log_path =
        cfg.output_root / ("CorrectionLog_" + layout.stage_label() + "_" + cfg.range.month_tag() + ".txt");
    gz::write_file(log_path, r.corrections.report(cfg.stages));
    r.written.push_back(log_path);

    r.exit_code = index.has_gaps() || !loaded.archive_errors.empty() ? kExitPartial : kExitOk;
    const fs::path readme = cfg.output_root / ("README_" + cfg.range.month_tag() + ".txt");
    gz::write_file(readme, month_readme(cfg, index, r, roti_tecr_diagnostic(tracks)));
    r.written.push_back(readme);
    return r;
}

} // namespace scinda
