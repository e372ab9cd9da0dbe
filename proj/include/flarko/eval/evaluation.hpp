#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "flarko/ingest/records.hpp"
#include "flarko/kg/graph.hpp"
#include "flarko/pipeline/pipeline.hpp"
#include "flarko/util/date.hpp"

namespace flarko::eval {

struct EvalWindow {
    Date start;
    Date end;
    int step_days = 14;
    int horizon_days = 180;
};

// Dates start, start+step, ... <= end, crossed with users; date-major order.
std::vector<std::pair<std::string, Date>> generate_instances(
    const EvalWindow& window, std::span<const std::string> users);

struct TargetSets {
    std::set<std::string> purchased;
    std::set<std::string> profitable;
    std::set<std::string> combined;  // purchased ∩ profitable
};

// ISINs the user bought with cutoff <= timestamp < cutoff + horizon.
std::set<std::string> purchased_set(std::span<const ingest::TransactionRecord> records,
                                    const std::string& user, Date cutoff, int horizon_days);

// ISINs with strictly positive return from the last close before the cutoff
// to the last close within [cutoff, cutoff + horizon]. Assets missing either
// price are excluded.
std::set<std::string> profitable_set(
    const std::map<std::string, std::vector<ingest::PriceBar>>& prices, Date cutoff,
    int horizon_days);

TargetSets make_targets(std::span<const ingest::TransactionRecord> records,
                        const std::map<std::string, std::vector<ingest::PriceBar>>& prices,
                        const std::string& user, Date cutoff, int horizon_days);

// 1 iff any of the top-3 is in the target set.
int hits_at_3(std::span<const std::string> top3, const std::set<std::string>& target);

enum class HitMode { Binary, Precision };

// Binary: hits_at_3. Precision: |top3 ∩ target| / 3.
double hit_score(std::span<const std::string> top3, const std::set<std::string>& target,
                 HitMode mode);

struct MetricsReport {
    std::string variant;
    std::string model;
    int n = 0;
    double pref_at_3 = 0.0, se_pref = 0.0;
    double prof_at_3 = 0.0, se_prof = 0.0;
    double comb_at_3 = 0.0, se_comb = 0.0;
};

// Per-variant proportions with standard errors sqrt(p(1-p)/n). Throws
// DataError listing instance ids that have no targets.
std::vector<MetricsReport> score_run(std::span<const pipeline::RecommendationResult> results,
                                     const std::map<std::string, TargetSets>& targets,
                                     HitMode mode = HitMode::Binary,
                                     const std::string& model = "");

struct LeakageViolation {
    kg::Triple triple;
    std::string reason;  // "post-cutoff" | "malformed"
};

struct LeakageReport {
    std::vector<LeakageViolation> violations;
    bool clean() const { return violations.empty(); }
};

// Scans every date-typed literal in both graphs; anything not strictly
// before the cutoff (or unparseable) is a violation.
LeakageReport leakage_audit(const kg::Graph& pkg, const kg::Graph& mkg, Date cutoff);

enum class ReportFormat { Csv, Json };

// CSV columns: variant,model,n,pref_at_3,se_pref,prof_at_3,se_prof,
// comb_at_3,se_comb. Rows sorted by variant name; JSON mirrors the fields.
void emit_report(std::span<const MetricsReport> reports, const std::filesystem::path& path,
                 ReportFormat format);

}  // namespace flarko::eval
