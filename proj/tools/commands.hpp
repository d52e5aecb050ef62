#pragma once

#include <cstdint>
#include <string>

#include "driftlab/protocols.hpp"

namespace driftlab::cli {

// Shared pipeline knobs, mirrored 1:1 by CLI flags.
struct CommonOptions {
    std::string stopwords_path;  // empty = shipped German list
    std::string stemmer = "german";
    std::size_t max_terms = 3000;
    std::size_t min_corpus_freq = 5;
    bool bigrams = true;
    double l2_penalty = 1e-4;
    std::size_t epochs = 30;
    double learning_rate = 0.1;
    std::uint64_t seed = 42;

    ExperimentParams experiment_params() const;
};

struct IngestArgs {
    std::string input;
    bool strict = false;
    std::string out_dir = ".";
};

struct SplitEvalArgs {
    std::string input;
    std::string eval_start;
    std::string out_dir = ".";
    CommonOptions common;
};

struct DegradeArgs {
    std::string input;
    int chunks = 5;
    std::string out_dir = ".";
    CommonOptions common;
};

struct EmergingArgs {
    std::string input;
    std::string period_start;
    std::string period_end;
    int group_months = 2;
    std::size_t top_n = 20;
    std::string out_dir = ".";
    CommonOptions common;
};

struct SynthArgs {
    std::string spec_path;
    std::string out_csv;
};

int run_ingest(const IngestArgs& args);
int run_split_eval(const SplitEvalArgs& args);
int run_degrade(const DegradeArgs& args);
int run_emerging(const EmergingArgs& args);
int run_synth(const SynthArgs& args);

}  // namespace driftlab::cli
