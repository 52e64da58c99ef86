// Command-line front end: load a session config, run it, print the report.
//
// Exit codes: 0 on success (discrepancies with published values are findings,
// not failures), 2 on a config or command-line error, 1 on anything else.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nres/report/session.hpp"

namespace {

constexpr int exit_usage = 2;

struct Overrides {
    std::optional<int> dim;
    std::optional<std::string> case_label, mode, format;
    std::optional<int> lemma_trials;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> quantities;
};

nres::SessionConfig build_config(const std::string& path, const Overrides& o)
{
    nres::SessionConfig cfg = path.empty() ? nres::SessionConfig{} : nres::parse_config(nres::read_config_file(path));
    if (o.dim)
        cfg.nbar = *o.dim;
    if (o.case_label)
        cfg.case_label = *o.case_label;
    if (o.mode)
        cfg.mode = *o.mode == "printed" ? nres::Mode::Printed : nres::Mode::Oracle;
    if (o.format)
        cfg.format = *o.format;
    if (o.seed)
        cfg.seed = *o.seed;
    if (o.lemma_trials) {
        cfg.lemma_trials = *o.lemma_trials;
        // asking for lemma trials without a quantity list means "just the lemmas"
        if (cfg.quantities.empty() && o.quantities.empty())
            cfg.quantities = {"trace_lemmas"};
    }
    if (!o.quantities.empty())
        cfg.quantities = o.quantities;
    nres::validate(cfg);
    return cfg;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact residue densities for decorated Dirac operators"};
    std::string config_path;
    Overrides o;
    app.add_option("--config", config_path, "YAML session config")->check(CLI::ExistingFile);
    app.add_option("--dim", o.dim, "boundary dimension (even, 2..10)");
    app.add_option("--case", o.case_label, "boundary case")->check(CLI::IsMember({"a1", "a2", "a3", "b", "c", "all"}));
    app.add_option("--mode", o.mode, "oracle or printed")->check(CLI::IsMember({"oracle", "printed"}));
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--verify-lemmas", o.lemma_trials, "random trials for the trace identities")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "seed for the random trials");
    app.add_option("--quantity", o.quantities, "restrict to these quantities (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        const nres::SessionConfig cfg = build_config(config_path, o);
        std::cout << nres::emit(nres::run_session(cfg), cfg.format);
        return 0;
    } catch (const nres::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        const bool usage = e.code() == nres::ErrorCode::ParseError || e.code() == nres::ErrorCode::ValidationError;
        return usage ? exit_usage : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
