#include "subdirac/report.hpp"

#include <algorithm>
#include <cmath>

namespace subdirac {

namespace {

// relative deviation with an absolute fallback near zero, so identities whose
// two sides both vanish do not divide by zero
double relative_deviation(double lhs, double rhs) {
    const double dev = std::fabs(lhs - rhs);
    const double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    return scale < 1e-12 ? dev : dev / scale;
}

CheckRecord make_record(std::string id, std::string ref, double lhs, double rhs,
                        std::string note) {
    CheckRecord rec;
    rec.id = std::move(id);
    rec.paper_ref = std::move(ref);
    rec.lhs = lhs;
    rec.rhs = rhs;
    rec.abs_dev = std::fabs(lhs - rhs);
    rec.rel_dev = relative_deviation(lhs, rhs);
    rec.note = std::move(note);
    return rec;
}

} // namespace

CheckRecord make_check(std::string id, std::string ref, double lhs, double rhs, double tol,
                       std::string note) {
    CheckRecord rec = make_record(std::move(id), std::move(ref), lhs, rhs, std::move(note));
    rec.pass = std::isfinite(rec.abs_dev) && rec.abs_dev <= tol;
    return rec;
}

CheckRecord make_check_rel(std::string id, std::string ref, double lhs, double rhs, double tol,
                           std::string note) {
    CheckRecord rec = make_record(std::move(id), std::move(ref), lhs, rhs, std::move(note));
    rec.pass = std::isfinite(rec.rel_dev) && rec.rel_dev <= tol;
    return rec;
}

CheckRecord make_audit(std::string id, std::string ref, double lhs, double rhs, std::string note) {
    CheckRecord rec = make_record(std::move(id), std::move(ref), lhs, rhs, std::move(note));
    rec.pass = true;
    rec.klass = "audit";
    return rec;
}

bool Report::all_passed() const {
    return std::all_of(records.begin(), records.end(),
                       [](const CheckRecord& r) { return r.klass != "check" || r.pass; });
}

nlohmann::json report_to_json(const Report& r) {
    std::vector<CheckRecord> sorted = r.records;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });

    nlohmann::json records = nlohmann::json::array();
    long passed = 0;
    long failed = 0;
    long audit = 0;
    for (const CheckRecord& rec : sorted) {
        records.push_back({{"id", rec.id},
                           {"paper_ref", rec.paper_ref},
                           {"lhs", rec.lhs},
                           {"rhs", rec.rhs},
                           {"abs_dev", rec.abs_dev},
                           {"rel_dev", rec.rel_dev},
                           {"pass", rec.pass},
                           {"class", rec.klass},
                           {"note", rec.note}});
        if (rec.klass == "audit")
            ++audit;
        else if (rec.pass)
            ++passed;
        else
            ++failed;
    }

    return nlohmann::json{
        {"command", r.command},
        {"metadata",
         {{"tool", tool_name},
          {"version", tool_version},
          {"p", r.dims.p},
          {"q", r.dims.q},
          {"seed", r.seed},
          {"trials", r.trials},
          {"tolerance", r.tolerance},
          {"flags", r.flags},
          {"wall_time_s", r.wall_time_s}}},
        {"values", r.values},
        {"records", records},
        {"summary",
         {{"records", static_cast<long>(sorted.size())},
          {"passed", passed},
          {"failed", failed},
          {"audit", audit}}}};
}

} // namespace subdirac
