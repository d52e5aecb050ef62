#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "driftlab/errors.hpp"
#include "driftlab/version.hpp"

namespace {

using namespace driftlab;
using namespace driftlab::cli;

void add_common_flags(CLI::App* cmd, CommonOptions& common) {
    cmd->add_option("--seed", common.seed, "Master seed; all randomness derives from it")
        ->capture_default_str();
    cmd->add_option("--stopwords", common.stopwords_path,
                    "Stopword list file (default: shipped German list)");
    cmd->add_option("--stemmer", common.stemmer, "Stemmer: german | none")
        ->capture_default_str();
    cmd->add_option("--max-terms", common.max_terms, "Vocabulary size cap")
        ->capture_default_str();
    cmd->add_option("--min-freq", common.min_corpus_freq,
                    "Minimum total corpus frequency for a term")
        ->capture_default_str();
    cmd->add_flag("!--no-bigrams", common.bigrams, "Use unigrams only");
    cmd->add_option("--l2", common.l2_penalty, "L2 penalty")->capture_default_str();
    cmd->add_option("--epochs", common.epochs, "Training epochs")->capture_default_str();
    cmd->add_option("--lr", common.learning_rate, "Initial learning rate")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporal evaluation toolkit for abusive-comment classifiers"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);
    app.set_config("--config");
    app.failure_message(CLI::FailureMessage::help);

    IngestArgs ingest_args;
    auto* ingest = app.add_subcommand("ingest", "Validate a comment CSV and emit a summary");
    ingest->add_option("input", ingest_args.input, "Comment CSV file")->required();
    ingest->add_flag("--strict", ingest_args.strict, "Abort on the first malformed row");
    ingest->add_option("--out", ingest_args.out_dir, "Output directory")
        ->capture_default_str();

    SplitEvalArgs split_args;
    auto* split =
        app.add_subcommand("split-eval", "Time-stratified vs random-split comparison");
    split->add_option("input", split_args.input, "Comment CSV file")->required();
    split->add_option("--eval-start", split_args.eval_start,
                      "Evaluation period start (ISO-8601)")
        ->required();
    split->add_option("--out", split_args.out_dir, "Output directory")->capture_default_str();
    add_common_flags(split, split_args.common);

    DegradeArgs degrade_args;
    auto* degrade =
        app.add_subcommand("degrade", "Train/test degradation matrix over time chunks");
    degrade->add_option("input", degrade_args.input, "Comment CSV file")->required();
    degrade->add_option("--chunks", degrade_args.chunks, "Number of consecutive chunks")
        ->capture_default_str();
    degrade->add_option("--out", degrade_args.out_dir, "Output directory")
        ->capture_default_str();
    add_common_flags(degrade, degrade_args.common);

    EmergingArgs emerging_args;
    auto* emerging = app.add_subcommand("emerging", "Emerging vocabulary over a period");
    emerging->add_option("input", emerging_args.input, "Comment CSV file")->required();
    std::vector<std::string> period;
    emerging->add_option("--period", period, "Period start and end (ISO-8601)")
        ->expected(2)
        ->required();
    emerging->add_option("--group-months", emerging_args.group_months,
                         "Interval width in months")
        ->capture_default_str();
    emerging->add_option("--top", emerging_args.top_n, "Words per interval")
        ->capture_default_str();
    emerging->add_option("--out", emerging_args.out_dir, "Output directory")
        ->capture_default_str();
    emerging->add_option("--stopwords", emerging_args.common.stopwords_path,
                         "Stopword list file (default: shipped German list)");
    emerging->add_option("--stemmer", emerging_args.common.stemmer, "Stemmer: german | none")
        ->capture_default_str();

    SynthArgs synth_args;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic drifting corpus");
    synth->add_option("spec", synth_args.spec_path, "Generator spec (JSON)")->required();
    synth->add_option("--out", synth_args.out_csv, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*ingest) return run_ingest(ingest_args);
        if (*split) return run_split_eval(split_args);
        if (*degrade) return run_degrade(degrade_args);
        if (*emerging) {
            emerging_args.period_start = period[0];
            emerging_args.period_end = period[1];
            return run_emerging(emerging_args);
        }
        if (*synth) return run_synth(synth_args);
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
