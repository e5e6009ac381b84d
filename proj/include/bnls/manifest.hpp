#pragma once
// Run manifests: one JSON file per CLI run recording everything needed to
// reproduce it bit-identically (command, config snapshot, seed, jobs) plus
// the wall-clock, per-output digests, and the validation summary. Written
// atomically (temp file + rename) at run end. The wall-clock field is the
// only nondeterministic entry and is excluded from rerun comparison.

#include <cstdint>
#include <string>
#include <vector>

namespace bnls {

struct OutputRecord {
  std::string file;         // path relative to the output directory
  std::uint64_t bytes = 0;
  std::uint64_t fnv1a64 = 0;
};

struct ValidationRecord {
  std::string name;
  bool pass = false;
  bool waived = false;
  double measured = 0.0;
  double bound = 0.0;
};

struct RunManifest {
  std::string artifact_version;
  std::string command;       // e.g. "scan tc"
  std::string config_text;   // exact snapshot of the parsed config
  std::uint64_t seed = 0;
  int jobs = 1;
  bool resolution_doubling = false;
  std::vector<std::string> waived;  // --waive flag names as given
  double wall_seconds = 0.0;
  std::vector<OutputRecord> outputs;
  std::vector<ValidationRecord> validation;
  int exit_code = 0;
};

std::string manifest_json(const RunManifest& m);

// Parses a manifest previously written by manifest_json. Throws ConfigError
// on malformed input.
RunManifest parse_manifest(const std::string& json_text);

// Writes content to path via a sibling temp file and rename; throws
// std::runtime_error on I/O failure.
void atomic_write_file(const std::string& path, const std::string& content);

// Reads a whole file; throws ConfigError when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace bnls
