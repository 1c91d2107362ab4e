// Copyright 2026 The qkmeans Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qkmeans/config.hpp"

#include <fstream>
#include <istream>

#include "qkmeans/error.hpp"
#include "text.hpp"

namespace qkmeans {

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source) {
  KeyValueConfig cfg;
  cfg.source_ = source;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      text = text.substr(0, hash);
    }
    text = detail::trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    const auto where = source + ":" + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw Error(ErrorCode::kParse, where + "expected key = value");
    const std::string key(detail::trim(text.substr(0, eq)));
    const std::string value(detail::trim(text.substr(eq + 1)));
    if (key.empty()) throw Error(ErrorCode::kParse, where + "empty key");
    if (cfg.values_.count(key)) throw Error(ErrorCode::kParse, where + "duplicate key '" + key + "'");
    cfg.values_[key] = value;
    cfg.lines_[key] = line_no;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file " + path);
  return parse(in, path);
}

std::optional<std::string> KeyValueConfig::raw(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  used_.insert(key);
  return it->second;
}

namespace {

[[noreturn]] void bad_value(const std::string& source, const std::string& key,
                            const std::string& value, const char* expected) {
  throw Error(ErrorCode::kParse,
              source + ": key '" + key + "': expected " + expected + ", got '" + value + "'");
}

}  // namespace

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  return raw(key).value_or(fallback);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto v = raw(key);
  if (!v) return fallback;
  const auto d = detail::parse_number<double>(*v);
  if (!d) bad_value(source_, key, *v, "a number");
  return *d;
}

long long KeyValueConfig::get_int(const std::string& key, long long fallback) const {
  const auto v = raw(key);
  if (!v) return fallback;
  const auto d = detail::parse_number<long long>(*v);
  if (!d) bad_value(source_, key, *v, "an integer");
  return *d;
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto v = raw(key);
  if (!v) return fallback;
  const auto d = detail::parse_number<std::uint64_t>(*v);
  if (!d) bad_value(source_, key, *v, "an unsigned integer");
  return *d;
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key) const {
  const auto v = raw(key);
  if (!v) return {};
  std::string_view text = detail::trim(*v);
  constexpr std::string_view kLinspace = "linspace(";
  if (text.starts_with(kLinspace) && text.ends_with(")")) {
    const auto args = detail::split(text.substr(kLinspace.size(), text.size() - kLinspace.size() - 1), ',');
    if (args.size() != 3) bad_value(source_, key, *v, "linspace(start, stop, count)");
    const auto a = detail::parse_number<double>(args[0]);
    const auto b = detail::parse_number<double>(args[1]);
    const auto n = detail::parse_number<int>(args[2]);
    if (!a || !b || !n || *n < 1) bad_value(source_, key, *v, "linspace(start, stop, count)");
    std::vector<double> out(*n);
    for (int i = 0; i < *n; ++i) {
      out[i] = *n == 1 ? *a : *a + (*b - *a) * static_cast<double>(i) / (*n - 1);
    }
    return out;
  }
  std::vector<double> out;
  for (auto item : detail::split(text, ',')) {
    const auto d = detail::parse_number<double>(item);
    if (!d) bad_value(source_, key, *v, "a comma separated list of numbers");
    out.push_back(*d);
  }
  return out;
}

std::vector<std::string> KeyValueConfig::get_strings(const std::string& key) const {
  const auto v = raw(key);
  if (!v) return {};
  std::vector<std::string> out;
  for (auto item : detail::split(*v, ',')) {
    if (!item.empty()) out.emplace_back(item);
  }
  return out;
}

void KeyValueConfig::reject_unused() const {
  for (const auto& [key, value] : values_) {
    if (!used_.count(key)) {
      throw Error(ErrorCode::kParse, source_ + ":" + std::to_string(lines_.at(key)) +
                                         ": unknown key '" + key + "'");
    }
  }
}

}  // namespace qkmeans
