#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include "limcov/verify.hpp"

namespace limcov {

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Line-oriented run report. Every line is `KEY rest`; the last line is the
/// overall `VERDICT PASS|FAIL`.
class Report {
 public:
  explicit Report(std::string subcommand) { line("SUBCOMMAND", std::move(subcommand)); }

  void input(std::string_view bytes) { line("INPUT", "fnv1a64 " + hex64(fnv1a64(bytes))); }
  void param(std::string_view name, const std::string& value) { line("PARAM", std::string(name) + " " + value); }

  void line(std::string_view key, const std::string& rest) {
    std::string s(key);
    if (!rest.empty()) s += " " + rest;
    lines_.push_back(std::move(s));
  }

  void verdict(const Verdict& v) {
    line("VERDICT", v.name + (v.pass ? " PASS" : " FAIL"));
    if (!v.pass) {
      pass_ = false;
      if (!v.witness.empty()) line("WITNESS", v.name + " " + v.witness);
    }
  }

  void verdict(std::string name, bool pass, std::string witness = {}) {
    verdict(Verdict{std::move(name), pass, std::move(witness)});
  }

  void verdicts(const Verdicts& vs) {
    for (const auto& v : vs) verdict(v);
  }

  bool pass() const { return pass_; }

  std::string text() const {
    std::string out;
    for (const auto& l : lines_) out += l + '\n';
    out += pass_ ? "VERDICT PASS\n" : "VERDICT FAIL\n";
    return out;
  }

 private:
  std::vector<std::string> lines_;
  bool pass_ = true;
};

}  // namespace limcov
