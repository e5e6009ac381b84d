#pragma once
// Deterministic artifact emission. All floats print as %.17g (round-trip);
// non-finite values become JSON null (CSV keeps nan/inf tokens). Key order is
// fixed by the emitters, never by hashing, so identical inputs give
// byte-identical files.

#include <string>
#include <vector>

#include "bnls/asymptotics.hpp"
#include "bnls/constants.hpp"
#include "bnls/functionals.hpp"
#include "bnls/measure_ratio.hpp"
#include "bnls/minimize.hpp"
#include "bnls/profiles.hpp"
#include "bnls/region.hpp"
#include "bnls/scan.hpp"
#include "bnls/witness.hpp"

namespace bnls {

// Minimal streaming JSON writer with automatic comma placement and 2-space
// indentation.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double v);  // non-finite -> null
  JsonWriter& value(int v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v);
  JsonWriter& null();
  JsonWriter& kv(const std::string& k, double v) { return key(k).value(v); }
  JsonWriter& kv(const std::string& k, int v) { return key(k).value(v); }
  JsonWriter& kv(const std::string& k, std::uint64_t v) {
    return key(k).value(v);
  }
  JsonWriter& kv(const std::string& k, bool v) { return key(k).value(v); }
  JsonWriter& kv(const std::string& k, const std::string& v) {
    return key(k).value(v);
  }
  std::string str() const { return out_; }

 private:
  void before_item();
  std::string out_;
  std::vector<bool> has_item_;  // per open container
  bool pending_key_ = false;
};

std::string json_escape(const std::string& s);

// JSON reports. `result_json` omits the field payload (saved separately).
std::string result_json(const MinimizerResult& r, const std::string& kind,
                        int dim, double sigma, double c_or_m);
std::string functional_json(const FunctionalReport& f, int dim, double sigma,
                            double c);
void curve_json(JsonWriter& w, const BranchCurve& curve);
std::string constants_json(const ConstantsReport& r);
std::string small_c_json(const SmallCReport& r);
std::string large_c_json(const LargeCReport& r);
void region_json(JsonWriter& w, const RegionPoint& pt);
void profile_json(JsonWriter& w, const ProfileCurve& pc);
void witness_json(JsonWriter& w, const WitnessSweep& sw);
void flags_json(JsonWriter& w, const std::vector<ValidationFlag>& flags);

// CSV reports (header line + rows, '\n' terminated).
std::string curve_csv(const BranchCurve& curve);
std::string history_csv(const std::vector<HistoryEntry>& h);
std::string profile_csv(const ProfileCurve& pc);
std::string witness_csv(const WitnessSweep& sw);
std::string small_c_csv(const SmallCReport& r);

}  // namespace bnls
