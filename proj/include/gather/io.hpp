#pragma once

// File formats: configurations (JSON or CSV), crash schedules, trace JSONL
// and run summaries.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gather/simulator.hpp"

namespace gather {

// {"points": [[x, y], ...]} or one "x,y" line per robot. Blank lines and
// lines starting with '#' are skipped in CSV. Throws InvalidInput.
std::vector<Point> parse_points(std::string_view text);
std::vector<Point> read_points(const std::string& path);
void write_points(const std::string& path, const std::vector<Point>& points);

// [{"round": r, "robot": i}, ...] or {"crashes": [...], "faulty_sets": [[...]]}.
void read_crash_schedule(const std::string& path, AdversarySpec& adv);

nlohmann::json to_json(const TraceRecord& rec);
TraceRecord trace_record_from_json(const nlohmann::json& j);
std::string trace_line(const TraceRecord& rec);
void write_trace(std::ostream& out, const std::vector<TraceRecord>& trace);

nlohmann::json summary_json(const RunResult& result, std::uint64_t seed);

// Uniform points in the unit square, resampled while bivalent.
std::vector<Point> random_points(std::size_t n, Rng& rng, const Tolerance& tol = {});

}  // namespace gather
