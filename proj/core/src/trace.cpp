#include <nlohmann/json.hpp>

#include "text_util.hpp"
#include "trustrev/scenario.hpp"

namespace trustrev {

namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kTraceTag = "trustrev-trace";
constexpr int kTraceVersion = 1;

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += sep;
    out += item;
  }
  return out;
}

std::string text_line(const TraceRecord& r) {
  std::string out = "[" + std::to_string(r.event) + "] " + r.kind + " " + r.target + ": " + r.input + " | ";
  out += r.mechanism.empty() ? "-" : r.mechanism;
  if (r.mechanism == "metric") out += " m=" + (r.threshold ? std::to_string(*r.threshold) : std::string("none"));
  if (!r.ok()) return out + " | error: " + r.error;
  return out + " | result: " + join(r.result_states, " ") + " | dnf: " + r.result_dnf;
}

json nullable(const std::string& s) { return s.empty() ? json(nullptr) : json(s); }

std::string string_or_empty(const json& j) { return j.is_null() ? std::string() : j.get<std::string>(); }

}  // namespace

std::string render_trace(const Trace& trace, TraceFormat format) {
  std::string out;
  if (format == TraceFormat::Text) {
    out += "# trace | signature: " + join(trace.signature, " ") +
           " | events: " + std::to_string(trace.records.size()) + "\n";
    for (const auto& r : trace.records) out += text_line(r) + "\n";
    return out;
  }
  json header;
  header["format"] = kTraceTag;
  header["version"] = kTraceVersion;
  header["signature"] = trace.signature;
  header["events"] = trace.records.size();
  out += header.dump() + "\n";
  for (const auto& r : trace.records) {
    json j;
    j["event"] = r.event;
    j["target"] = r.target;
    j["mechanism"] = nullable(r.mechanism);
    j["threshold"] = r.threshold ? json(*r.threshold) : json(nullptr);
    j["result_states"] = r.result_states;
    j["result_dnf"] = nullable(r.result_dnf);
    j["error"] = nullable(r.error);
    j["kind"] = r.kind;
    j["input"] = r.input;
    out += j.dump() + "\n";
  }
  return out;
}

Trace parse_structured_trace(std::string_view text) {
  Trace trace;
  bool have_header = false;
  std::size_t expected = 0;
  for (const auto& line : detail::content_lines(text)) {
    try {
      const json j = json::parse(line.text);
      if (!have_header) {
        if (j.value("format", std::string()) != kTraceTag || j.value("version", 0) != kTraceVersion) {
          throw Error(ErrorCode::MalformedLine, "not a version 1 trace header");
        }
        trace.signature = j.at("signature").get<std::vector<std::string>>();
        expected = j.at("events").get<std::size_t>();
        have_header = true;
        continue;
      }
      TraceRecord r;
      r.event = j.at("event").get<std::size_t>();
      r.target = j.at("target").get<std::string>();
      r.mechanism = string_or_empty(j.at("mechanism"));
      if (!j.at("threshold").is_null()) r.threshold = j.at("threshold").get<Distance>();
      r.result_states = j.at("result_states").get<std::vector<std::string>>();
      r.result_dnf = string_or_empty(j.at("result_dnf"));
      r.error = string_or_empty(j.at("error"));
      r.kind = j.at("kind").get<std::string>();
      r.input = j.at("input").get<std::string>();
      trace.records.push_back(std::move(r));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::MalformedLine, e.what(), line.number);
    } catch (const Error& e) {
      if (e.line()) throw;
      throw e.at_line(line.number);
    }
  }
  if (!have_header) throw Error(ErrorCode::MalformedLine, "missing trace header");
  if (trace.records.size() != expected) {
    throw Error(ErrorCode::MalformedLine, "header announces " + std::to_string(expected) + " records, found " +
                                              std::to_string(trace.records.size()));
  }
  return trace;
}

}  // namespace trustrev
