#include "bnls/report.hpp"

#include <cmath>

#include "bnls/util.hpp"

namespace bnls {

namespace {

std::string csv_num(double v) { return fmt17(v); }

int point_bits(const BranchPoint& p) {
  return (p.converged ? 1 : 0) | (p.degenerate ? 2 : 0) | (p.failed ? 4 : 0);
}

}  // namespace

// ---------------------------------------------------------------- JsonWriter

void JsonWriter::before_item() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!has_item_.empty()) {
    if (has_item_.back()) out_ += ',';
    has_item_.back() = true;
    out_ += '\n';
    out_.append(2 * has_item_.size(), ' ');
  }
}

JsonWriter& JsonWriter::begin_object() {
  before_item();
  out_ += '{';
  has_item_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  const bool any = has_item_.back();
  has_item_.pop_back();
  if (any) {
    out_ += '\n';
    out_.append(2 * has_item_.size(), ' ');
  }
  out_ += '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  before_item();
  out_ += '[';
  has_item_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  const bool any = has_item_.back();
  has_item_.pop_back();
  if (any) {
    out_ += '\n';
    out_.append(2 * has_item_.size(), ' ');
  }
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  before_item();
  out_ += '"';
  out_ += json_escape(k);
  out_ += "\": ";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  if (!std::isfinite(v)) return null();
  before_item();
  out_ += fmt17(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) {
  before_item();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
  before_item();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  before_item();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  before_item();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  before_item();
  out_ += '"';
  out_ += json_escape(v);
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

JsonWriter& JsonWriter::null() {
  before_item();
  out_ += "null";
  return *this;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (ch < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += static_cast<char>(ch);
        }
    }
  }
  return out;
}

// ------------------------------------------------------------- JSON reports

void flags_json(JsonWriter& w, const std::vector<ValidationFlag>& flags) {
  w.begin_array();
  for (const ValidationFlag& f : flags) {
    w.begin_object();
    w.kv("name", f.name);
    w.kv("pass", f.pass);
    w.kv("measured", f.measured);
    w.kv("bound", f.bound);
    if (!f.detail.empty()) w.kv("detail", f.detail);
    w.end_object();
  }
  w.end_array();
}

std::string result_json(const MinimizerResult& r, const std::string& kind,
                        int dim, double sigma, double c_or_m) {
  JsonWriter w;
  w.begin_object();
  w.kv("kind", kind);
  w.kv("dim", dim);
  w.kv("sigma", sigma);
  w.kv("parameter", c_or_m);
  w.kv("value", r.value);
  w.kv("multiplier", r.multiplier);
  w.kv("mass", r.mass);
  w.kv("tc_value", r.tc_value);
  w.key("residuals").begin_object();
  w.kv("nehari", r.residual_nehari);
  w.kv("pohozaev", r.residual_pohozaev);
  w.kv("p1", r.residual_p1);
  w.kv("p2", r.residual_p2);
  w.kv("grad", r.residual_grad);
  w.kv("euler", r.residual_euler);
  w.end_object();
  w.kv("iterations", r.iterations);
  w.kv("converged", r.converged);
  w.kv("degenerate", r.degenerate);
  w.kv("seed", r.seed);
  w.kv("history_entries", static_cast<int>(r.history.size()));
  w.end_object();
  return w.str() + "\n";
}

std::string functional_json(const FunctionalReport& f, int dim, double sigma,
                            double c) {
  JsonWriter w;
  w.begin_object();
  w.kv("dim", dim);
  w.kv("sigma", sigma);
  w.kv("c", c);
  w.kv("E", f.E);
  w.kv("Sc", f.Sc);
  w.kv("Tc", f.Tc);
  w.kv("Kc", f.Kc);
  w.kv("K", f.K);
  w.kv("D", f.D);
  w.kv("Nc", f.Nc);
  w.kv("Pc", f.Pc);
  w.kv("P1", f.P1);
  w.kv("P2", f.P2);
  w.kv("lambda", f.lambda);
  w.kv("c_of_u", f.c_of_u);
  w.kv("mass", f.mass);
  w.kv("grad2", f.grad2);
  w.kv("bilap2", f.bilap2);
  w.kv("shifted2", f.shifted2);
  w.kv("lp", f.lp);
  w.end_object();
  return w.str() + "\n";
}

void curve_json(JsonWriter& w, const BranchCurve& curve) {
  w.begin_object();
  w.kv("kind", curve.kind);
  w.kv("dim", curve.dim);
  w.kv("sigma", curve.sigma);
  w.kv("seed", curve.seed);
  w.kv("I_independent", curve.I_independent);
  w.kv("points", static_cast<int>(curve.points.size()));
  w.kv("all_pass", curve.all_pass());
  w.key("flags");
  flags_json(w, curve.flags);
  w.end_object();
}

std::string constants_json(const ConstantsReport& r) {
  JsonWriter w;
  w.begin_object();
  w.kv("dim", r.dim);
  w.kv("sigma", r.sigma);
  w.kv("I", r.I);
  w.kv("B", r.B);
  w.kv("C", r.C);
  w.kv("identity_residual", r.identity_residual);
  w.kv("k_star", r.k_star);
  w.kv("M", r.M);
  w.kv("m0", r.m0);
  w.kv("mu0", r.mu0);
  w.kv("M_estimated", r.M_estimated);
  w.kv("M_restricted", r.M_restricted);
  w.kv("restriction_R", r.restriction_R);
  w.kv("region_bounded", r.region_bounded);
  w.end_object();
  return w.str() + "\n";
}

std::string small_c_json(const SmallCReport& r) {
  JsonWriter w;
  w.begin_object();
  w.kv("dim", r.dim);
  w.kv("sigma", r.sigma);
  w.kv("p_probe", r.p_probe);
  w.key("points").begin_array();
  for (std::size_t i = 0; i < r.c_grid.size(); ++i) {
    w.begin_object();
    w.kv("c", r.c_grid[i]);
    w.kv("bilap_ratio", r.bilap_ratio[i]);
    w.kv("grad_ratio", r.grad_ratio[i]);
    w.kv("shifted_ratio", r.shifted_ratio[i]);
    w.kv("lp_probe", r.lp_probe[i]);
    w.end_object();
  }
  w.end_array();
  w.kv("all_pass", r.all_pass());
  w.key("flags");
  flags_json(w, r.flags);
  w.end_object();
  return w.str() + "\n";
}

std::string large_c_json(const LargeCReport& r) {
  JsonWriter w;
  w.begin_object();
  w.kv("dim", r.dim);
  w.kv("sigma", r.sigma);
  w.kv("c", r.c);
  w.kv("t_c", r.t_c);
  w.kv("I", r.I);
  w.kv("K_distance_rel", r.K_distance_rel);
  w.kv("Kc_vc", r.Kc_vc);
  w.kv("comparison_lo", r.comparison_lo);
  w.kv("virial_bilap", r.virial_bilap);
  w.kv("virial_mass", r.virial_mass);
  w.kv("virial_bilap_limit", r.virial_bilap_limit);
  w.kv("virial_mass_limit", r.virial_mass_limit);
  w.kv("converge_m", r.converge_m);
  w.kv("converge_d", r.converge_d);
  w.kv("converge_si", r.converge_si);
  w.kv("all_pass", r.all_pass());
  w.key("flags");
  flags_json(w, r.flags);
  w.end_object();
  return w.str() + "\n";
}

void region_json(JsonWriter& w, const RegionPoint& pt) {
  w.begin_object();
  w.kv("dim", pt.dim);
  w.kv("s", pt.s);
  w.kv("p", pt.p);
  w.kv("kappa", pt.kappa);
  w.kv("cond_half", pt.cond_half);
  w.kv("cond_lower", pt.cond_lower);
  w.kv("cond_upper", pt.cond_upper);
  w.kv("classification", boundedness_name(pt.classification));
  w.end_object();
}

void profile_json(JsonWriter& w, const ProfileCurve& pc) {
  w.begin_object();
  w.kv("slope0", pc.slope0);
  w.kv("slope_inf", pc.slope_inf);
  w.kv("exponent0", pc.exponent0);
  w.kv("exponent_inf", pc.exponent_inf);
  w.kv("bounded0", pc.bounded0);
  w.kv("bounded_inf", pc.bounded_inf);
  w.kv("applicable", pc.applicable);
  w.kv("verdict", pc.verdict);
  w.kv("points", static_cast<int>(pc.t.size()));
  w.end_object();
}

void witness_json(JsonWriter& w, const WitnessSweep& sw) {
  w.begin_object();
  w.kv("family", sw.family);
  w.kv("fitted_slope", sw.fitted_slope);
  w.kv("predicted_slope", sw.predicted_slope);
  w.kv("unbounded_witness", sw.unbounded_witness);
  w.kv("verdict", sw.verdict);
  w.kv("points", static_cast<int>(sw.param.size()));
  w.end_object();
}

// -------------------------------------------------------------- CSV reports

std::string curve_csv(const BranchCurve& curve) {
  std::string out =
      "param,value,multiplier,residual_max,flags,mass,bilap2,grad2,shifted2,"
      "lp,D,iterations,note\n";
  for (const BranchPoint& p : curve.points) {
    out += csv_num(p.param) + ',' + csv_num(p.value) + ',' +
           csv_num(p.multiplier) + ',' + csv_num(p.residual_max) + ',' +
           std::to_string(point_bits(p)) + ',' + csv_num(p.mass) + ',' +
           csv_num(p.bilap2) + ',' + csv_num(p.grad2) + ',' +
           csv_num(p.shifted2) + ',' + csv_num(p.lp) + ',' + csv_num(p.D) +
           ',' + std::to_string(p.iterations) + ',' + p.note + '\n';
  }
  return out;
}

std::string history_csv(const std::vector<HistoryEntry>& h) {
  std::string out = "iter,value,grad_residual\n";
  for (const HistoryEntry& e : h)
    out += std::to_string(e.iter) + ',' + csv_num(e.value) + ',' +
           csv_num(e.grad) + '\n';
  return out;
}

std::string profile_csv(const ProfileCurve& pc) {
  std::string out = "t,value\n";
  for (std::size_t i = 0; i < pc.t.size(); ++i)
    out += csv_num(pc.t[i]) + ',' + csv_num(pc.value[i]) + '\n';
  return out;
}

std::string witness_csv(const WitnessSweep& sw) {
  std::string out = "param,q_value,spectral_tail\n";
  for (std::size_t i = 0; i < sw.param.size(); ++i)
    out += csv_num(sw.param[i]) + ',' + csv_num(sw.q_value[i]) + ',' +
           csv_num(sw.spectral_tail[i]) + '\n';
  return out;
}

std::string small_c_csv(const SmallCReport& r) {
  std::string out = "c,bilap_ratio,grad_ratio,shifted_ratio,lp_probe\n";
  for (std::size_t i = 0; i < r.c_grid.size(); ++i)
    out += csv_num(r.c_grid[i]) + ',' + csv_num(r.bilap_ratio[i]) + ',' +
           csv_num(r.grad_ratio[i]) + ',' + csv_num(r.shifted_ratio[i]) +
           ',' + csv_num(r.lp_probe[i]) + '\n';
  return out;
}

}  // namespace bnls
