#include "toric/report.hpp"

#include <json.hpp>

#include "toric/error.hpp"

namespace toric {

using nlohmann::json;

namespace {

StepKind step_kind_from(const std::string& s, ErrorKind on_error) {
  for (auto k : {StepKind::blowdown, StepKind::exceptional_pair, StepKind::flip})
    if (to_string(k) == s) return k;
  throw Error(on_error, "unknown step kind '" + s + "'");
}

json relation_json(const LabeledRelation& r) {
  json rhs = json::array();
  for (const auto& [label, coef] : r.rhs) rhs.push_back({{"ray", label}, {"coefficient", coef.get_str()}});
  return {{"text", r.text}, {"lhs", r.lhs}, {"rhs", rhs}};
}

LabeledRelation relation_from(const json& j) {
  LabeledRelation r;
  r.text = j.at("text").get<std::string>();
  r.lhs = j.at("lhs").get<std::vector<std::string>>();
  for (const auto& t : j.at("rhs")) {
    Integer c;
    if (c.set_str(t.at("coefficient").get<std::string>(), 10) != 0 || sgn(c) <= 0)
      throw Error(ErrorKind::malformed_log, "bad coefficient in " + r.text);
    r.rhs.emplace_back(t.at("ray").get<std::string>(), c);
  }
  return r;
}

}  // namespace

std::string certificate_to_json(const Certificate& c) {
  json base = json::array();
  for (int t : c.twice_base) base.push_back(format_half(t));
  json corrections = json::array();
  for (const auto& corr : c.corrections)
    corrections.push_back({{"step", corr.step},
                           {"kind", std::string(to_string(corr.kind))},
                           {"coefficient", format_half(corr.twice_coefficient)},
                           {"parameter", corr.parameter},
                           {"parameter_ray", corr.parameter_ray},
                           {"rule", corr.rule}});
  std::string verdict;
  try {
    verdict = std::string(to_string(check_certificate(c)));
  } catch (const Error&) {
    verdict = "invalid";
  }
  json j = {{"cert_version", kCertVersion},
            {"input", c.input_id},
            {"fiber_dim", c.fiber_dim},
            {"centered", c.centered},
            {"cut_out", c.cut_out},
            {"base", base},
            {"corrections", corrections},
            {"verdict", verdict}};
  return j.dump(2) + "\n";
}

Certificate certificate_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    if (j.at("cert_version").get<int>() != kCertVersion)
      throw Error(ErrorKind::invalid_certificate, "unsupported cert_version");
    Certificate c;
    c.input_id = j.value("input", std::string());
    c.fiber_dim = j.at("fiber_dim").get<int>();
    c.centered = j.at("centered").get<std::vector<std::string>>();
    c.cut_out = j.at("cut_out").get<std::size_t>();
    for (const auto& b : j.at("base")) c.twice_base.push_back(parse_half(b.get<std::string>()));
    for (const auto& e : j.at("corrections")) {
      Correction corr;
      corr.step = e.at("step").get<std::size_t>();
      corr.kind = step_kind_from(e.at("kind").get<std::string>(), ErrorKind::invalid_certificate);
      corr.twice_coefficient = parse_half(e.at("coefficient").get<std::string>());
      corr.parameter = e.at("parameter").get<std::string>();
      corr.parameter_ray = e.value("parameter_ray", std::string());
      corr.rule = e.value("rule", std::string());
      c.corrections.push_back(std::move(corr));
    }
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_certificate, e.what());
  }
}

std::string log_to_json(const TransformLog& log) {
  json steps = json::array();
  for (const auto& s : log.steps) {
    json rels = json::array();
    for (const auto& r : s.relations) rels.push_back(relation_json(r));
    steps.push_back({{"kind", std::string(to_string(s.kind))},
                     {"relations", rels},
                     {"x_positions", s.x_positions},
                     {"removed_rays", s.removed_rays},
                     {"parameter_ray", s.parameter_ray}});
  }
  json j = {{"input", log.input_id}, {"centered", log.centered}, {"steps", steps}};
  return j.dump(2) + "\n";
}

TransformLog log_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    TransformLog log;
    log.input_id = j.value("input", std::string());
    log.centered = j.at("centered").get<std::vector<std::string>>();
    for (const auto& e : j.at("steps")) {
      TransformStep s;
      s.kind = step_kind_from(e.at("kind").get<std::string>(), ErrorKind::malformed_log);
      for (const auto& r : e.at("relations")) s.relations.push_back(relation_from(r));
      s.x_positions = e.at("x_positions").get<std::vector<std::size_t>>();
      s.removed_rays = e.at("removed_rays").get<std::vector<std::string>>();
      s.parameter_ray = e.at("parameter_ray").get<std::string>();
      log.steps.push_back(std::move(s));
    }
    return log;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::malformed_log, e.what());
  }
}

}  // namespace toric
