#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "scinda/aggregate.hpp"
#include "scinda/corpus_io.hpp"
#include "scinda/preprocess.hpp"
#include "scinda/scn.hpp"

namespace scinda {

/// Process exit codes shared by the CLI and run_pipeline.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitCorpus = 2,
    kExitPartial = 3,   // gaps or unreadable archives; outputs still written
};

struct PipelineConfig {
    std::filesystem::path corpus_root;
    DayRange range = DayRange::whole_month(2015, 3);
    StageSet stages = StageSet::all();
    ValidityPolicy policy;
    std::filesystem::path output_root;
    unsigned workers = 1;
    bool plots = false;
    bool write_corrected_scn = true;
    bool write_pair_scn = true;
};

struct LoadedMonth {
    MonthBuckets buckets;
    ParseReport parse;
    std::vector<std::string> archive_errors;
};

/// Extracts and parses every processable .scn archive of the index with a
/// pool of `workers` threads. Buckets are keyed by each file's own hour;
/// the result does not depend on the worker count.
LoadedMonth load_month(const CorpusIndex& index, unsigned workers);

/// Aggregation products for already-preprocessed buckets.
MonthProducts build_products(const MonthBuckets& buckets, const ValidityPolicy& policy);

struct PipelineResult {
    int exit_code = kExitOk;
    std::size_t epochs_loaded = 0;
    std::size_t epochs_kept = 0;
    ParseReport parse;
    CorrectionLog corrections;
    std::vector<std::string> warnings;
    std::vector<std::filesystem::path> written;
    std::vector<int> prns;
};

/// scan -> extract -> parse -> preprocess -> split / average -> hourly stats -> write.
/// Throws ConfigError / CorpusError / IoError for fatal problems.
PipelineResult run_pipeline(const PipelineConfig& config);

/// Plain-text month summary written next to the outputs.
std::string month_readme(const PipelineConfig& config, const CorpusIndex& index, const PipelineResult& result,
                         const RotiCheck& roti);

} // namespace scinda
