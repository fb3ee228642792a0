#include "relcheck/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "relcheck/errors.hpp"

namespace relcheck {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Info:
      return "info";
  }
  return "?";
}

Status status_from_string(const std::string& s) {
  if (s == "pass") return Status::Pass;
  if (s == "fail") return Status::Fail;
  if (s == "info") return Status::Info;
  throw DomainError("unknown status " + s);
}

Status Report::status() const {
  for (const auto& c : checks)
    if (c.status == Status::Fail) return Status::Fail;
  return Status::Pass;
}

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [s](const Check& c) { return c.status == s; }));
}

const Check* Report::find(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return &c;
  return nullptr;
}

Check& Report::add(Check c) {
  if (c.paper_ref.empty()) c.paper_ref = "plumbing";
  checks.push_back(std::move(c));
  return checks.back();
}

Check& Report::expect_zero(const std::string& id, const std::string& ref, const Expr& residual,
                           const std::string& description) {
  Check c;
  c.id = id;
  c.paper_ref = ref;
  c.description = description;
  c.residual = residual.str();
  c.status = residual.is_zero() ? Status::Pass : Status::Fail;
  return add(std::move(c));
}

Check& Report::expect(const std::string& id, const std::string& ref, bool ok, const std::string& residual,
                      const std::string& description) {
  Check c;
  c.id = id;
  c.paper_ref = ref;
  c.description = description;
  c.residual = residual;
  c.status = ok ? Status::Pass : Status::Fail;
  return add(std::move(c));
}

Check& Report::info(const std::string& id, const std::string& ref, const std::string& residual,
                    const std::string& description) {
  Check c;
  c.id = id;
  c.paper_ref = ref;
  c.description = description;
  c.residual = residual;
  c.status = Status::Info;
  return add(std::move(c));
}

void Report::append(const Report& other, const std::string& prefix) {
  for (auto c : other.checks) {
    c.id = prefix + c.id;
    checks.push_back(std::move(c));
  }
}

std::string render_text(const Report& r) {
  std::size_t id_width = 2;
  for (const auto& c : r.checks) id_width = std::max(id_width, c.id.size());
  std::ostringstream out;
  out << "suite " << r.suite << "  seed " << r.seed << "\n";
  for (const auto& c : r.checks) {
    out << "  " << c.id << std::string(id_width - c.id.size() + 2, ' ') << to_string(c.status);
    std::string res = c.residual;
    if (res.size() > 160) res = res.substr(0, 157) + "...";
    if (c.status != Status::Pass || res != "0") out << "  " << res;
    if (c.witness) {
      out << "  at {";
      bool first = true;
      for (const auto& [k, v] : *c.witness) {
        out << (first ? "" : ", ") << k << "=" << v;
        first = false;
      }
      out << "}";
    }
    out << "\n";
  }
  out << "status " << to_string(r.status()) << "  (" << r.count(Status::Pass) << " pass, " << r.count(Status::Fail)
      << " fail, " << r.count(Status::Info) << " info)\n";
  return out.str();
}

std::string render_json(const Report& r, bool include_timing) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["suite"] = r.suite;
  doc["seed"] = r.seed;
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json j;
    j["id"] = c.id;
    j["paper_ref"] = c.paper_ref;
    j["status"] = to_string(c.status);
    j["residual"] = c.residual;
    if (c.witness) {
      ordered_json w = ordered_json::object();
      for (const auto& [k, v] : *c.witness) w[k] = v;
      j["witness"] = w;
    } else {
      j["witness"] = nullptr;
    }
    j["ms"] = include_timing ? c.ms : 0;
    if (!c.description.empty()) j["description"] = c.description;
    checks.push_back(std::move(j));
  }
  doc["checks"] = std::move(checks);
  doc["status"] = to_string(r.status());
  return doc.dump(2) + "\n";
}

Report parse_report_json(const std::string& text) {
  auto doc = nlohmann::json::parse(text);
  Report r(doc.at("suite").get<std::string>(), doc.at("seed").get<std::uint64_t>());
  for (const auto& j : doc.at("checks")) {
    Check c;
    c.id = j.at("id").get<std::string>();
    c.paper_ref = j.at("paper_ref").get<std::string>();
    c.status = status_from_string(j.at("status").get<std::string>());
    c.residual = j.at("residual").get<std::string>();
    if (!j.at("witness").is_null()) c.witness = j.at("witness").get<Witness>();
    c.ms = j.at("ms").get<long long>();
    if (j.contains("description")) c.description = j.at("description").get<std::string>();
    r.checks.push_back(std::move(c));
  }
  return r;
}

}  // namespace relcheck
