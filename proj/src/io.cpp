#include "gather/io.hpp"

#include <fstream>
#include <sstream>

#include "gather/errors.hpp"

namespace gather {

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json point_json(Point p) { return json::array({p.x, p.y}); }

Point point_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InvalidInput("expected [x, y], got " + j.dump());
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view s) {
  const std::string t(trim(s));
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw InvalidInput("not a number: '" + t + "'");
  }
  if (used != t.size()) throw InvalidInput("not a number: '" + t + "'");
  return v;
}

}  // namespace

std::vector<Point> parse_points(std::string_view text) {
  const std::string_view body = trim(text);
  std::vector<Point> out;
  if (!body.empty() && body.front() == '{') {
    json j;
    try {
      j = json::parse(body);
    } catch (const json::parse_error& e) {
      throw InvalidInput(std::string("malformed JSON: ") + e.what());
    }
    if (!j.contains("points") || !j["points"].is_array()) {
      throw InvalidInput("configuration JSON needs a \"points\" array");
    }
    for (const auto& p : j["points"]) out.push_back(point_from(p));
    return out;
  }
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= body.size() && !body.empty()) {
    const auto nl = body.find('\n', pos);
    const std::string_view line = trim(body.substr(pos, nl == std::string_view::npos ? nl : nl - pos));
    ++line_no;
    if (!line.empty() && line.front() != '#') {
      const auto comma = line.find(',');
      if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
        throw InvalidInput("line " + std::to_string(line_no) + ": expected x,y");
      }
      out.push_back({parse_double(line.substr(0, comma)), parse_double(line.substr(comma + 1))});
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

std::vector<Point> read_points(const std::string& path) { return parse_points(slurp(path)); }

void write_points(const std::string& path, const std::vector<Point>& points) {
  json j;
  j["points"] = json::array();
  for (const Point& p : points) j["points"].push_back(point_json(p));
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << j.dump() << '\n';
}

void read_crash_schedule(const std::string& path, AdversarySpec& adv) {
  json j;
  try {
    j = json::parse(slurp(path));
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed crash schedule: ") + e.what());
  }
  const auto count = [](const json& v) {
    if (!v.is_number_unsigned()) throw InvalidInput("expected a nonnegative integer, got " + v.dump());
    return v.get<std::uint64_t>();
  };
  const json* events = &j;
  try {
    if (j.is_object()) {
      if (j.contains("faulty_sets")) {
        for (const auto& set : j.at("faulty_sets")) {
          std::vector<std::size_t> members;
          for (const auto& r : set) members.push_back(count(r));
          adv.faulty_sets.push_back(std::move(members));
        }
      }
      if (!j.contains("crashes")) return;
      events = &j["crashes"];
    }
    if (!events->is_array()) throw InvalidInput("crash schedule must be a list");
    for (const auto& e : *events) adv.crash_schedule.push_back({count(e.at("round")), count(e.at("robot"))});
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad crash event: ") + e.what());
  }
}

json to_json(const TraceRecord& rec) {
  json j;
  j["round"] = rec.round;
  j["class"] = std::string(to_string(rec.cls));
  j["positions"] = json::array();
  for (const Point& p : rec.positions) j["positions"].push_back(point_json(p));
  j["crashed"] = json::array();
  for (bool b : rec.crashed) j["crashed"].push_back(b);
  j["activated"] = rec.activated;
  j["decisions"] = json::array();
  for (const auto& d : rec.decisions) {
    j["decisions"].push_back(
        {{"robot", d.robot}, {"rule", std::string(to_string(d.rule))}, {"dest", point_json(d.dest)}});
  }
  j["stops"] = json::array();
  for (const Point& p : rec.stops) j["stops"].push_back(point_json(p));
  j["gathered"] = rec.gathered;
  return j;
}

TraceRecord trace_record_from_json(const json& j) {
  TraceRecord rec;
  try {
    rec.round = j.at("round").get<std::uint64_t>();
    const auto tag = parse_class_tag(j.at("class").get<std::string>());
    if (!tag) throw InvalidInput("unknown class " + j.at("class").dump());
    rec.cls = *tag;
    for (const auto& p : j.at("positions")) rec.positions.push_back(point_from(p));
    for (const auto& b : j.at("crashed")) rec.crashed.push_back(b.get<bool>());
    rec.activated = j.at("activated").get<std::vector<std::size_t>>();
    for (const auto& d : j.at("decisions")) {
      const auto rule = parse_rule(d.at("rule").get<std::string>());
      if (!rule) throw InvalidInput("unknown rule " + d.at("rule").dump());
      rec.decisions.push_back({d.at("robot").get<std::size_t>(), *rule, point_from(d.at("dest"))});
    }
    for (const auto& p : j.at("stops")) rec.stops.push_back(point_from(p));
    rec.gathered = j.at("gathered").get<bool>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad trace record: ") + e.what());
  }
  return rec;
}

std::string trace_line(const TraceRecord& rec) { return to_json(rec).dump(); }

void write_trace(std::ostream& out, const std::vector<TraceRecord>& trace) {
  for (const auto& rec : trace) out << trace_line(rec) << '\n';
}

json summary_json(const RunResult& result, std::uint64_t seed) {
  return {{"outcome", std::string(to_string(result.outcome.kind))},
          {"rounds", result.outcome.rounds},
          {"crashes", result.crashes},
          {"seed", seed}};
}

std::vector<Point> random_points(std::size_t n, Rng& rng, const Tolerance& tol) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (true) {
    std::vector<Point> pts(n);
    for (auto& p : pts) p = {u(rng), u(rng)};
    if (n == 0 || classify(Configuration(pts, tol)).tag != ClassTag::Bivalent) return pts;
  }
}

}  // namespace gather
