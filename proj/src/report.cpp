#include "polylab/report.hpp"

#include <array>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace polylab {

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

nlohmann::json Tagged::to_json() const {
  if (exact) return {{"tag", "exact-rational"}, {"value", format_rational(rational)}};
  return {{"tag", "float"}, {"value", value}};
}

std::string Tagged::text() const {
  if (exact) return format_rational(rational);
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

RunReport::RunReport(std::string command, std::uint64_t seed) : command_(std::move(command)), seed_(seed) {}

void RunReport::add_input(std::string_view name, std::string_view content) {
  inputs_.emplace_back(std::string(name), std::string(content));
}

std::string RunReport::inputs_digest() const {
  std::string buf = command_;
  buf += '\0';
  for (const auto& [name, content] : inputs_) {
    buf += name;
    buf += '\0';
    buf += std::to_string(content.size());
    buf += '\0';
    buf += content;
  }
  return sha256_hex(buf);
}

void RunReport::set_output(const std::string& key, const Tagged& v) { outputs_[key] = v.to_json(); }

void RunReport::set_output(const std::string& key, nlohmann::json v) { outputs_[key] = std::move(v); }

bool RunReport::check(const std::string& name, bool passed, const Tagged& lhs, const Tagged& rhs,
                      const std::string& relation) {
  assertions_.push_back({name, passed, lhs, rhs, relation});
  return passed;
}

bool RunReport::check(const std::string& name, bool passed) {
  return check(name, passed, Tagged::of(passed ? 1 : 0), Tagged::of(1), "==");
}

bool RunReport::ok() const {
  for (const auto& a : assertions_)
    if (!a.passed) return false;
  return true;
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json j;
  j["command"] = command_;
  j["seed"] = seed_;
  j["inputs_digest"] = inputs_digest();
  j["outputs"] = outputs_;
  auto arr = nlohmann::json::array();
  for (const auto& a : assertions_)
    arr.push_back({{"name", a.name},
                   {"status", a.passed ? "pass" : "fail"},
                   {"lhs", a.lhs.to_json()},
                   {"rhs", a.rhs.to_json()},
                   {"relation", a.relation}});
  j["assertions"] = arr;
  j["ok"] = ok();
  j["wall_time_ms"] = wall_time_ms_;
  return j;
}

std::string RunReport::to_csv() const {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  std::ostringstream os;
  os << "section,key,tag,value\n";
  os << "meta,command,string," << quote(command_) << "\n";
  os << "meta,seed,exact-rational," << seed_ << "\n";
  os << "meta,inputs_digest,string," << inputs_digest() << "\n";
  for (const auto& [key, v] : outputs_.items()) {
    if (v.is_object() && v.contains("tag") && v.contains("value")) {
      const auto& val = v["value"];
      os << "output," << quote(key) << "," << v["tag"].get<std::string>() << ","
         << (val.is_string() ? val.get<std::string>() : val.dump()) << "\n";
    } else {
      os << "output," << quote(key) << ",json," << quote(v.dump()) << "\n";
    }
  }
  for (const auto& a : assertions_)
    os << "assertion," << quote(a.name) << "," << (a.passed ? "pass" : "fail") << ","
       << quote(a.lhs.text() + " " + a.relation + " " + a.rhs.text()) << "\n";
  os << "meta,wall_time_ms,float," << wall_time_ms_ << "\n";
  return os.str();
}

}  // namespace polylab
