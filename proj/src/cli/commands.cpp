#include "flarko/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "flarko/cli/synth.hpp"
#include "flarko/eval/evaluation.hpp"
#include "flarko/ingest/kg_builder.hpp"
#include "flarko/ingest/summarize.hpp"
#include "flarko/kg/jsonld.hpp"
#include "flarko/llm/http_generator.hpp"
#include "flarko/llm/mock_generator.hpp"
#include "flarko/util/decimal.hpp"
#include "flarko/util/errors.hpp"

namespace flarko::cli {

namespace {

using nlohmann::ordered_json;

std::map<std::string, std::vector<ingest::TenWeekPriceSummary>> summaries_at(
    const Dataset& data, Date cutoff) {
    std::map<std::string, std::vector<ingest::TenWeekPriceSummary>> out;
    for (const auto& [isin, series] : data.prices) {
        auto summaries = ingest::summarize_prices(series, cutoff);
        if (!summaries.empty()) out.emplace(isin, std::move(summaries));
    }
    return out;
}

kg::Graph build_mkg_at(const Dataset& data, Date cutoff, const kg::Vocabulary& vocab,
                       std::vector<std::string>* warnings = nullptr) {
    return ingest::build_mkg(summaries_at(data, cutoff), data.assets, cutoff, vocab, warnings);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
}

ordered_json stage_to_json(const pipeline::StageResult& stage) {
    ordered_json j;
    auto selected = ordered_json::array();
    for (const auto& term : stage.selection.selected) selected.push_back(term.value);
    j["selected"] = std::move(selected);
    j["used_fallback"] = stage.selection.used_fallback;
    j["dropped_hallucinations"] = stage.selection.dropped_hallucinations;
    j["truncated_candidates"] = stage.selection.truncated_candidates;
    j["prompt_tokens_estimate"] = stage.selection.prompt_tokens_estimate;
    j["subgraph_triples"] = stage.subgraph.size();
    j["serialized"] = stage.serialized;
    return j;
}

std::string result_to_line(const pipeline::RecommendationResult& result,
                           const RunConfig& config) {
    ordered_json j;
    j["instance_id"] = result.instance_id;
    j["user"] = result.user;
    j["cutoff"] = result.cutoff.to_string();
    j["variant"] = pipeline::variant_name(result.variant);
    j["status"] = "ok";
    j["top3"] = result.top3;
    j["raw_generation"] = result.raw_generation;
    if (result.ptr) j["ptr"] = stage_to_json(*result.ptr);
    if (result.mr) j["mr"] = stage_to_json(*result.mr);
    j["generation_prompt_tokens"] = result.generation_prompt_tokens;
    if (!result.truncation_log.empty()) j["truncation_log"] = result.truncation_log;
    j["model"] = config.generation.model_name;
    j["prompt_version"] = config.prompt_version;
    return j.dump();
}

std::string failure_to_line(const pipeline::InstanceSpec& unit, const std::string& error,
                            const RunConfig& config) {
    ordered_json j;
    j["instance_id"] = unit.instance_id;
    j["user"] = unit.user;
    j["cutoff"] = unit.cutoff.to_string();
    j["variant"] = pipeline::variant_name(unit.variant);
    j["status"] = "failed";
    j["error"] = error;
    j["model"] = config.generation.model_name;
    j["prompt_version"] = config.prompt_version;
    return j.dump();
}

std::shared_ptr<llm::GeneratorBackend> make_backend(const RunConfig& config) {
    if (config.generation_mode == "http") return std::make_shared<llm::HttpBackend>();
    return llm::MockBackend::from_spec(config.mock_spec);
}

std::unique_ptr<selection::Selector> make_selector(const RunConfig& config,
                                                   llm::Gateway& gateway) {
    if (config.selector_policy == "llm") {
        return std::make_unique<selection::LlmSelector>(gateway);
    }
    selection::HeuristicPolicy policy = selection::HeuristicPolicy::All;
    if (config.selector_policy == "recent_k") policy = selection::HeuristicPolicy::RecentK;
    if (config.selector_policy == "round_robin_k") {
        policy = selection::HeuristicPolicy::RoundRobinK;
    }
    return std::make_unique<selection::HeuristicSelector>(policy, config.selector_k);
}

std::string unit_id(Date cutoff, const std::string& user, pipeline::Variant variant) {
    return cutoff.to_string() + '_' + user + '_' + pipeline::variant_name(variant);
}

struct ResultLine {
    std::string instance_id;
    std::string user;
    Date cutoff;
    pipeline::Variant variant = pipeline::Variant::MultiStage;
    bool ok = false;
    std::vector<std::string> top3;
    std::string raw;  // the whole line, for canonical rewriting
};

std::vector<ResultLine> read_results(const std::filesystem::path& path) {
    std::vector<ResultLine> lines;
    std::ifstream in(path);
    if (!in) return lines;
    std::string text;
    while (std::getline(in, text)) {
        if (text.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception&) {
            continue;  // half-written line from an interrupted run
        }
        ResultLine line;
        line.instance_id = j.value("instance_id", "");
        line.user = j.value("user", "");
        auto cutoff = Date::try_parse(j.value("cutoff", ""));
        auto variant = pipeline::variant_from_name(j.value("variant", ""));
        if (line.instance_id.empty() || !cutoff || !variant) continue;
        line.cutoff = *cutoff;
        line.variant = *variant;
        line.ok = j.value("status", "") == "ok";
        if (line.ok) {
            for (const auto& isin : j.value("top3", nlohmann::json::array())) {
                if (isin.is_string()) line.top3.push_back(isin.get<std::string>());
            }
        }
        line.raw = text;
        lines.push_back(std::move(line));
    }
    return lines;
}

}  // namespace

Dataset load_dataset(const RunConfig& config) {
    Dataset data;
    std::ifstream txns(config.transactions_path);
    if (!txns) throw DataError("cannot open " + config.transactions_path.string());
    data.transactions = ingest::load_transactions(txns, config.txn_mapping, data.report);

    std::ifstream prices(config.prices_path);
    if (!prices) throw DataError("cannot open " + config.prices_path.string());
    data.prices = ingest::load_prices(prices, config.price_mapping, data.report);

    std::ifstream assets(config.assets_path);
    if (!assets) throw DataError("cannot open " + config.assets_path.string());
    data.assets = ingest::load_assets(assets, config.asset_mapping, data.report);
    return data;
}

std::vector<std::string> resolve_users(const RunConfig& config, const Dataset& data) {
    if (!config.users.empty()) return config.users;
    std::vector<std::string> users;
    for (const auto& rec : data.transactions) users.push_back(rec.user_id);
    std::sort(users.begin(), users.end());
    users.erase(std::unique(users.begin(), users.end()), users.end());
    return users;
}

int cmd_synth(const RunConfig& config, std::ostream& out) {
    write_synthetic_dataset(config);
    out << "wrote " << config.transactions_path.string() << "\n"
        << "wrote " << config.prices_path.string() << "\n"
        << "wrote " << config.assets_path.string() << "\n";
    return kExitOk;
}

int cmd_build_kg(const RunConfig& config, Date cutoff, std::ostream& out) {
    validate_data_paths(config);
    const Dataset data = load_dataset(config);
    const kg::Vocabulary vocab(config.namespace_iri);
    const auto kg_dir = config.output_dir / "kg";

    ordered_json manifest;
    manifest["cutoff"] = cutoff.to_string();
    manifest["namespace"] = config.namespace_iri;

    ordered_json user_entries;
    std::size_t pkg_triples_total = 0;
    for (const auto& user : resolve_users(config, data)) {
        const auto pkg = ingest::build_pkg(data.transactions, user, cutoff, vocab);
        const auto path = kg_dir / ("pkg_" + user + '_' + cutoff.to_string() + ".jsonld");
        write_text(path, kg::serialize_jsonld(pkg, vocab));
        const auto txn_count = kg::list_entities(pkg, vocab, vocab.transaction_class()).size();
        user_entries[user] = {{"transactions", txn_count}, {"triples", pkg.size()}};
        pkg_triples_total += pkg.size();
    }
    manifest["pkg"] = {{"users", std::move(user_entries)},
                       {"total_triples", pkg_triples_total}};

    std::vector<std::string> warnings;
    const auto summaries = summaries_at(data, cutoff);
    std::size_t summary_count = 0;
    for (const auto& [_, s] : summaries) summary_count += s.size();
    const auto mkg = ingest::build_mkg(summaries, data.assets, cutoff, vocab, &warnings);
    write_text(kg_dir / ("mkg_" + cutoff.to_string() + ".jsonld"),
               kg::serialize_jsonld(mkg, vocab));
    manifest["mkg"] = {{"assets", data.assets.size()},
                       {"summaries", summary_count},
                       {"triples", mkg.size()}};

    auto rejects = ordered_json::array();
    for (const auto& r : data.report.rejects) {
        rejects.push_back({{"record", r.record_number}, {"reason", r.reason}});
    }
    manifest["rejects"] = std::move(rejects);
    for (const auto& w : data.report.warnings) warnings.push_back(w);
    manifest["warnings"] = warnings;

    write_text(kg_dir / "build_manifest.json", manifest.dump(2) + "\n");
    out << "built KGs for cutoff " << cutoff.to_string() << " in " << kg_dir.string() << "\n";
    return kExitOk;
}

int cmd_run(const RunConfig& config, std::ostream& out) {
    validate_data_paths(config);
    const Dataset data = load_dataset(config);
    const kg::Vocabulary vocab(config.namespace_iri);
    const auto users = resolve_users(config, data);
    const auto instances = eval::generate_instances(config.window, users);

    std::filesystem::create_directories(config.output_dir);
    const auto results_path = config.output_dir / "results.jsonl";

    // Completed instances survive reruns; failed ones are retried.
    std::map<std::string, std::string> lines;
    std::size_t resumed = 0;
    for (const auto& line : read_results(results_path)) {
        if (line.ok) {
            lines.emplace(line.instance_id, line.raw);
            ++resumed;
        }
    }

    std::vector<pipeline::InstanceSpec> pending;
    ordered_json manifest_instances = ordered_json::array();
    for (const auto& [user, cutoff] : instances) {
        for (const auto variant : config.variants) {
            pipeline::InstanceSpec unit;
            unit.instance_id = unit_id(cutoff, user, variant);
            unit.user = user;
            unit.cutoff = cutoff;
            unit.variant = variant;
            unit.request_text = config.request_text;
            manifest_instances.push_back({{"instance_id", unit.instance_id},
                                          {"user", user},
                                          {"cutoff", cutoff.to_string()},
                                          {"variant", pipeline::variant_name(variant)}});
            if (!lines.contains(unit.instance_id)) pending.push_back(std::move(unit));
        }
    }

    ordered_json manifest;
    manifest["seed"] = config.seed;
    manifest["model"] = config.generation.model_name;
    manifest["prompt_version"] = config.prompt_version;
    manifest["selector_policy"] = config.selector_policy;
    manifest["request_text"] = config.request_text;
    manifest["instances"] = std::move(manifest_instances);
    write_text(config.output_dir / "run_manifest.json", manifest.dump(2) + "\n");
    write_text(config.output_dir / "config_snapshot.json", config.source.dump(2) + "\n");

    llm::AuditLog audit(config.output_dir / "audit.jsonl");
    llm::Gateway gateway(make_backend(config), config.generation, config.budget, &audit);
    auto selector = make_selector(config, gateway);

    // MKGs are shared per cutoff; build each once, lazily.
    std::mutex mkg_mu;
    std::map<std::int32_t, std::shared_ptr<const kg::Graph>> mkg_cache;
    const auto mkg_for = [&](Date cutoff) {
        std::lock_guard lock(mkg_mu);
        auto& slot = mkg_cache[cutoff.days_since_epoch()];
        if (!slot) slot = std::make_shared<kg::Graph>(build_mkg_at(data, cutoff, vocab));
        return slot;
    };

    std::mutex write_mu;
    std::ofstream append(results_path, std::ios::app);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> failures{0};

    const auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pending.size()) break;
            const auto& unit = pending[i];
            std::string line;
            try {
                const auto pkg = ingest::build_pkg(data.transactions, unit.user, unit.cutoff, vocab);
                const auto mkg = mkg_for(unit.cutoff);
                const auto result =
                    pipeline::run_pipeline(unit, pkg, *mkg, *selector, gateway, vocab);
                line = result_to_line(result, config);
            } catch (const std::exception& e) {
                line = failure_to_line(unit, e.what(), config);
                failures.fetch_add(1);
            }
            std::lock_guard lock(write_mu);
            lines[unit.instance_id] = line;
            append << line << '\n';
            append.flush();
        }
    };

    const int worker_count =
        std::max(1, std::min<int>(config.workers, static_cast<int>(pending.size())));
    if (worker_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int i = 0; i < worker_count; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    append.close();

    // Canonical rewrite: one line per unit, sorted by instance id.
    {
        std::ostringstream body;
        for (const auto& [_, line] : lines) body << line << '\n';
        write_text(results_path, body.str());
    }

    std::size_t failed_total = 0;
    for (const auto& line : read_results(results_path)) {
        if (!line.ok) ++failed_total;
    }
    out << "ran " << pending.size() << " units (" << resumed << " resumed), " << failures.load()
        << " failures; results in " << results_path.string() << "\n";
    return failed_total > 0 ? kExitPartialFailure : kExitOk;
}

int cmd_evaluate(const RunConfig& config, const std::filesystem::path& results_path,
                 std::ostream& out) {
    if (!std::filesystem::exists(results_path)) {
        throw DataError("results file does not exist: " + results_path.string());
    }
    const auto lines = read_results(results_path);
    if (lines.empty()) throw DataError("no results in " + results_path.string());

    validate_data_paths(config);
    const Dataset data = load_dataset(config);
    const kg::Vocabulary vocab(config.namespace_iri);

    // Profitability is user-independent; compute it once per cutoff.
    std::map<std::int32_t, std::set<std::string>> profitable_cache;
    const auto profitable_for = [&](Date cutoff) -> const std::set<std::string>& {
        auto [it, inserted] = profitable_cache.try_emplace(cutoff.days_since_epoch());
        if (inserted) {
            it->second = eval::profitable_set(data.prices, cutoff, config.window.horizon_days);
        }
        return it->second;
    };

    std::vector<pipeline::RecommendationResult> results;
    std::map<std::string, eval::TargetSets> targets;
    for (const auto& line : lines) {
        if (!line.ok) continue;
        eval::TargetSets t;
        t.purchased = eval::purchased_set(data.transactions, line.user, line.cutoff,
                                          config.window.horizon_days);
        if (config.active_users_only && t.purchased.empty()) continue;
        t.profitable = profitable_for(line.cutoff);
        std::set_intersection(t.purchased.begin(), t.purchased.end(), t.profitable.begin(),
                              t.profitable.end(), std::inserter(t.combined, t.combined.begin()));
        targets.emplace(line.instance_id, std::move(t));

        pipeline::RecommendationResult r;
        r.instance_id = line.instance_id;
        r.user = line.user;
        r.cutoff = line.cutoff;
        r.variant = line.variant;
        r.top3 = line.top3;
        results.push_back(std::move(r));
    }
    if (results.empty()) throw DataError("no scoreable results in " + results_path.string());

    const auto reports = eval::score_run(results, targets, config.hit_mode,
                                         config.generation.model_name);
    std::filesystem::create_directories(config.output_dir);
    eval::emit_report(reports, config.output_dir / "metrics.csv", eval::ReportFormat::Csv);
    eval::emit_report(reports, config.output_dir / "metrics.json", eval::ReportFormat::Json);

    // Rebuild each instance's graphs and audit them for post-cutoff facts.
    std::set<std::pair<std::string, std::int32_t>> audited;
    std::map<std::int32_t, kg::Graph> mkg_cache;
    ordered_json violations = ordered_json::array();
    for (const auto& line : lines) {
        if (!audited.emplace(line.user, line.cutoff.days_since_epoch()).second) continue;
        auto [mit, inserted] = mkg_cache.try_emplace(line.cutoff.days_since_epoch());
        if (inserted) mit->second = build_mkg_at(data, line.cutoff, vocab);
        const auto pkg = ingest::build_pkg(data.transactions, line.user, line.cutoff, vocab);
        const auto report = eval::leakage_audit(pkg, mit->second, line.cutoff);
        for (const auto& v : report.violations) {
            violations.push_back({{"user", line.user},
                                  {"cutoff", line.cutoff.to_string()},
                                  {"subject", v.triple.subject.value},
                                  {"predicate", v.triple.predicate.value},
                                  {"object", v.triple.object.value},
                                  {"reason", v.reason}});
        }
    }
    ordered_json leakage;
    leakage["violations"] = std::move(violations);
    write_text(config.output_dir / "leakage_report.json", leakage.dump(2) + "\n");

    for (const auto& r : reports) {
        out << r.variant << ": n=" << r.n << " pref@3=" << format_decimal(r.pref_at_3)
            << " prof@3=" << format_decimal(r.prof_at_3)
            << " comb@3=" << format_decimal(r.comb_at_3) << "\n";
    }
    out << "leakage violations: " << leakage["violations"].size() << "\n";
    return kExitOk;
}

int cmd_report(const std::filesystem::path& metrics_json, std::ostream& out) {
    std::ifstream in(metrics_json);
    if (!in) throw DataError("cannot open metrics file: " + metrics_json.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError("metrics file is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_array()) throw DataError("metrics file must hold a JSON array");
    out << "variant           n     pref@3    prof@3    comb@3\n";
    for (const auto& r : doc) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%-16s %5d  %.4f+-%.4f %.4f+-%.4f %.4f+-%.4f",
                      r.value("variant", "?").c_str(), r.value("n", 0),
                      r.value("pref_at_3", 0.0), r.value("se_pref", 0.0),
                      r.value("prof_at_3", 0.0), r.value("se_prof", 0.0),
                      r.value("comb_at_3", 0.0), r.value("se_comb", 0.0));
        out << buf << "\n";
    }
    return kExitOk;
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Knowledge-graph retrieval pipeline for asset recommendation backtests"};
    app.require_subcommand(1);

    std::string config_path;
    std::string cutoff_text;
    std::string results_path;
    std::string metrics_path;
    std::string output_dir_override;
    std::string mode_override;
    std::string endpoint_override;
    std::string model_override;
    int workers_override = -1;
    std::int64_t seed_override = -1;

    const auto add_common = [&](CLI::App* cmd, bool config_required) {
        auto* opt = cmd->add_option("-c,--config", config_path, "run config JSON");
        if (config_required) opt->required();
        cmd->add_option("--output-dir", output_dir_override, "override output directory");
        cmd->add_option("--seed", seed_override, "override RNG seed");
        cmd->add_option("--workers", workers_override, "override worker count");
        cmd->add_option("--mode", mode_override, "override generation.mode (mock|http)");
        cmd->add_option("--endpoint", endpoint_override, "override generation.endpoint_url");
        cmd->add_option("--model", model_override, "override generation.model_name");
    };

    auto* synth = app.add_subcommand("synth", "write a seeded synthetic dataset");
    add_common(synth, true);
    auto* build = app.add_subcommand("build-kg", "build and dump KGs for one cutoff");
    add_common(build, true);
    build->add_option("--cutoff", cutoff_text, "cutoff date (YYYY-MM-DD)")->required();
    auto* run = app.add_subcommand("run", "execute the backtest pipeline");
    add_common(run, true);
    auto* evaluate = app.add_subcommand("evaluate", "score a results file");
    add_common(evaluate, true);
    evaluate->add_option("--results", results_path, "results JSON-lines file");
    auto* report = app.add_subcommand("report", "print a metrics table");
    report->add_option("--metrics", metrics_path, "metrics JSON file")->required();

    args.insert(args.begin(), "flarko");
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitConfigError;
    }

    try {
        if (report->parsed()) return cmd_report(metrics_path, out);

        RunConfig config = load_config(config_path);
        if (!output_dir_override.empty()) config.output_dir = output_dir_override;
        if (seed_override >= 0) config.seed = static_cast<std::uint64_t>(seed_override);
        if (workers_override > 0) config.workers = workers_override;
        if (!mode_override.empty()) {
            if (mode_override != "mock" && mode_override != "http") {
                throw ConfigError("--mode must be mock|http");
            }
            config.generation_mode = mode_override;
        }
        if (!endpoint_override.empty()) config.generation.endpoint_url = endpoint_override;
        if (!model_override.empty()) config.generation.model_name = model_override;

        if (synth->parsed()) return cmd_synth(config, out);
        if (build->parsed()) {
            const auto cutoff = Date::try_parse(cutoff_text);
            if (!cutoff) throw ConfigError("--cutoff must be a YYYY-MM-DD date");
            return cmd_build_kg(config, *cutoff, out);
        }
        if (run->parsed()) return cmd_run(config, out);
        if (evaluate->parsed()) {
            const std::filesystem::path path = results_path.empty()
                                                   ? config.output_dir / "results.jsonl"
                                                   : std::filesystem::path(results_path);
            return cmd_evaluate(config, path, out);
        }
        err << "no subcommand\n";
        return kExitConfigError;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return kExitDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDataError;
    }
}

}  // namespace flarko::cli
