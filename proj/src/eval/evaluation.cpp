#include "flarko/eval/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>

#include "flarko/kg/vocabulary.hpp"
#include "flarko/util/decimal.hpp"
#include "flarko/util/errors.hpp"

namespace flarko::eval {

std::vector<std::pair<std::string, Date>> generate_instances(
    const EvalWindow& window, std::span<const std::string> users) {
    std::vector<std::pair<std::string, Date>> out;
    for (Date d = window.start; d <= window.end; d = d.add_days(window.step_days)) {
        for (const auto& user : users) out.emplace_back(user, d);
    }
    return out;
}

std::set<std::string> purchased_set(std::span<const ingest::TransactionRecord> records,
                                    const std::string& user, Date cutoff, int horizon_days) {
    const Date horizon_end = cutoff.add_days(horizon_days);
    std::set<std::string> out;
    for (const auto& rec : records) {
        if (rec.user_id == user && rec.txn_type == ingest::TxnType::Buy &&
            rec.timestamp >= cutoff && rec.timestamp < horizon_end) {
            out.insert(rec.isin);
        }
    }
    return out;
}

std::set<std::string> profitable_set(
    const std::map<std::string, std::vector<ingest::PriceBar>>& prices, Date cutoff,
    int horizon_days) {
    const Date horizon_end = cutoff.add_days(horizon_days);
    std::set<std::string> out;
    for (const auto& [isin, series] : prices) {
        const ingest::PriceBar* entry_bar = nullptr;
        const ingest::PriceBar* exit_bar = nullptr;
        for (const auto& bar : series) {
            if (bar.date < cutoff) entry_bar = &bar;
            if (bar.date >= cutoff && bar.date <= horizon_end) exit_bar = &bar;
        }
        if (entry_bar && exit_bar && exit_bar->close / entry_bar->close - 1.0 > 0.0) {
            out.insert(isin);
        }
    }
    return out;
}

TargetSets make_targets(std::span<const ingest::TransactionRecord> records,
                        const std::map<std::string, std::vector<ingest::PriceBar>>& prices,
                        const std::string& user, Date cutoff, int horizon_days) {
    TargetSets targets;
    targets.purchased = purchased_set(records, user, cutoff, horizon_days);
    targets.profitable = profitable_set(prices, cutoff, horizon_days);
    std::set_intersection(targets.purchased.begin(), targets.purchased.end(),
                          targets.profitable.begin(), targets.profitable.end(),
                          std::inserter(targets.combined, targets.combined.begin()));
    return targets;
}

int hits_at_3(std::span<const std::string> top3, const std::set<std::string>& target) {
    for (const auto& isin : top3) {
        if (target.contains(isin)) return 1;
    }
    return 0;
}

double hit_score(std::span<const std::string> top3, const std::set<std::string>& target,
                 HitMode mode) {
    if (mode == HitMode::Binary) return hits_at_3(top3, target);
    int hits = 0;
    for (const auto& isin : top3) {
        if (target.contains(isin)) ++hits;
    }
    return static_cast<double>(hits) / 3.0;
}

std::vector<MetricsReport> score_run(std::span<const pipeline::RecommendationResult> results,
                                     const std::map<std::string, TargetSets>& targets,
                                     HitMode mode, const std::string& model) {
    std::vector<std::string> missing;
    for (const auto& r : results) {
        if (!targets.contains(r.instance_id)) missing.push_back(r.instance_id);
    }
    if (!missing.empty()) {
        std::string ids;
        for (const auto& id : missing) ids += (ids.empty() ? "" : ", ") + id;
        throw DataError("no targets for instances: " + ids);
    }

    struct Tally {
        int n = 0;
        double pref = 0.0, prof = 0.0, comb = 0.0;
    };
    std::map<std::string, Tally> by_variant;
    for (const auto& r : results) {
        const auto& t = targets.at(r.instance_id);
        auto& tally = by_variant[pipeline::variant_name(r.variant)];
        ++tally.n;
        tally.pref += hit_score(r.top3, t.purchased, mode);
        tally.prof += hit_score(r.top3, t.profitable, mode);
        tally.comb += hit_score(r.top3, t.combined, mode);
    }

    const auto se = [](double p, int n) { return std::sqrt(p * (1.0 - p) / n); };
    std::vector<MetricsReport> reports;
    for (const auto& [variant, tally] : by_variant) {
        MetricsReport rep;
        rep.variant = variant;
        rep.model = model;
        rep.n = tally.n;
        rep.pref_at_3 = tally.pref / tally.n;
        rep.prof_at_3 = tally.prof / tally.n;
        rep.comb_at_3 = tally.comb / tally.n;
        rep.se_pref = se(rep.pref_at_3, tally.n);
        rep.se_prof = se(rep.prof_at_3, tally.n);
        rep.se_comb = se(rep.comb_at_3, tally.n);
        reports.push_back(std::move(rep));
    }
    return reports;
}

LeakageReport leakage_audit(const kg::Graph& pkg, const kg::Graph& mkg, Date cutoff) {
    LeakageReport report;
    const auto scan = [&](const kg::Graph& graph) {
        for (const auto& triple : graph.triples()) {
            if (!triple.object.is_literal() || triple.object.datatype != kg::xsd::kDate) {
                continue;
            }
            const auto date = Date::try_parse(triple.object.value);
            if (!date) {
                report.violations.push_back({triple, "malformed"});
            } else if (*date >= cutoff) {
                report.violations.push_back({triple, "post-cutoff"});
            }
        }
    };
    scan(pkg);
    scan(mkg);
    return report;
}

void emit_report(std::span<const MetricsReport> reports, const std::filesystem::path& path,
                 ReportFormat format) {
    std::vector<MetricsReport> sorted(reports.begin(), reports.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const MetricsReport& a, const MetricsReport& b) { return a.variant < b.variant; });

    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw DataError("cannot write report: " + path.string());

    if (format == ReportFormat::Csv) {
        out << "variant,model,n,pref_at_3,se_pref,prof_at_3,se_prof,comb_at_3,se_comb\n";
        for (const auto& r : sorted) {
            out << r.variant << ',' << r.model << ',' << r.n << ',' << format_decimal(r.pref_at_3)
                << ',' << format_decimal(r.se_pref) << ',' << format_decimal(r.prof_at_3) << ','
                << format_decimal(r.se_prof) << ',' << format_decimal(r.comb_at_3) << ','
                << format_decimal(r.se_comb) << '\n';
        }
    } else {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& r : sorted) {
            arr.push_back({{"variant", r.variant},
                           {"model", r.model},
                           {"n", r.n},
                           {"pref_at_3", r.pref_at_3},
                           {"se_pref", r.se_pref},
                           {"prof_at_3", r.prof_at_3},
                           {"se_prof", r.se_prof},
                           {"comb_at_3", r.comb_at_3},
                           {"se_comb", r.se_comb}});
        }
        out << arr.dump(2) << '\n';
    }
    if (!out) throw DataError("failed writing report: " + path.string());
}

}  // namespace flarko::eval
