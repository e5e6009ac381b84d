#include "bnls/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "bnls/errors.hpp"
#include "bnls/report.hpp"
#include "bnls/util.hpp"

namespace bnls {

namespace {

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex64(const std::string& s) {
  if (s.rfind("0x", 0) != 0) throw ConfigError("manifest: bad digest " + s);
  return std::stoull(s.substr(2), nullptr, 16);
}

}  // namespace

std::string manifest_json(const RunManifest& m) {
  JsonWriter w;
  w.begin_object();
  w.kv("artifact_version", m.artifact_version);
  w.kv("command", m.command);
  w.kv("seed", m.seed);
  w.key("jobs").value(m.jobs);
  w.kv("resolution_doubling", m.resolution_doubling);
  w.key("waived").begin_array();
  for (const std::string& s : m.waived) w.value(s);
  w.end_array();
  w.kv("wall_seconds", m.wall_seconds);
  w.key("outputs").begin_array();
  for (const OutputRecord& o : m.outputs) {
    w.begin_object();
    w.kv("file", o.file);
    w.kv("bytes", o.bytes);
    w.kv("fnv1a64", hex64(o.fnv1a64));
    w.end_object();
  }
  w.end_array();
  w.key("validation").begin_array();
  for (const ValidationRecord& v : m.validation) {
    w.begin_object();
    w.kv("name", v.name);
    w.kv("pass", v.pass);
    w.kv("waived", v.waived);
    w.kv("measured", v.measured);
    w.kv("bound", v.bound);
    w.end_object();
  }
  w.end_array();
  w.key("exit_code").value(m.exit_code);
  w.kv("config", m.config_text);
  w.end_object();
  return w.str() + "\n";
}

RunManifest parse_manifest(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("manifest: parse error: ") + e.what());
  }
  RunManifest m;
  try {
    m.artifact_version = j.at("artifact_version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.jobs = j.at("jobs").get<int>();
    m.resolution_doubling = j.at("resolution_doubling").get<bool>();
    for (const auto& s : j.at("waived"))
      m.waived.push_back(s.get<std::string>());
    m.wall_seconds = j.at("wall_seconds").is_null()
                         ? 0.0
                         : j.at("wall_seconds").get<double>();
    for (const auto& o : j.at("outputs")) {
      OutputRecord r;
      r.file = o.at("file").get<std::string>();
      r.bytes = o.at("bytes").get<std::uint64_t>();
      r.fnv1a64 = parse_hex64(o.at("fnv1a64").get<std::string>());
      m.outputs.push_back(r);
    }
    for (const auto& v : j.at("validation")) {
      ValidationRecord r;
      r.name = v.at("name").get<std::string>();
      r.pass = v.at("pass").get<bool>();
      r.waived = v.at("waived").get<bool>();
      r.measured = v.at("measured").is_null() ? 0.0 : v.at("measured").get<double>();
      r.bound = v.at("bound").is_null() ? 0.0 : v.at("bound").get<double>();
      m.validation.push_back(r);
    }
    m.exit_code = j.at("exit_code").get<int>();
    m.config_text = j.at("config").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("manifest: missing/typed field: ") +
                      e.what());
  }
  return m;
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("rename failed: " + tmp + " -> " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bnls
