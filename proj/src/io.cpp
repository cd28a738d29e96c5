#include "mcf/io.hpp"

#include <fstream>
#include <map>

#include "mcf/errors.hpp"

namespace mcf {

namespace {

std::string text_of(const Json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return j.dump();
  throw InputError(std::string(what) + " must be a decimal string");
}

BigInt int_of(const Json& j, const char* what) { return parse_int(text_of(j, what)); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Json str(const BigInt& v) { return to_string(v); }
Json str(const BigRational& v) { return to_string(v); }

Json index_or_null(const std::optional<std::size_t>& v) { return v ? Json(*v) : Json(nullptr); }

// Fields are shared between inputs that name the same polynomial and interval.
using FieldCache = std::map<std::string, FieldHandle>;

RealValue parse_real_cached(const Json& j, FieldCache& cache) {
  if (j.is_string() || j.is_number_integer()) return RealValue(parse_rational(text_of(j, "value")));
  if (!j.is_object()) throw InputError("a real value must be a string or an object");
  if (j.contains("rational")) return RealValue(parse_rational(text_of(j.at("rational"), "rational")));
  if (j.contains("decimal")) return RealValue(decimal_oracle(text_of(j.at("decimal"), "decimal")));
  if (j.contains("algebraic")) {
    const Json& a = j.at("algebraic");
    const Json& mp = member(a, "minpoly");
    if (!mp.is_array()) throw InputError("minpoly must be an array");
    std::vector<BigInt> coeffs;
    for (const auto& c : mp) coeffs.push_back(int_of(c, "minpoly coefficient"));
    BigRational lo = parse_rational(text_of(member(a, "lo"), "lo"));
    BigRational hi = parse_rational(text_of(member(a, "hi"), "hi"));
    std::string key = mp.dump() + "|" + to_string(lo) + "|" + to_string(hi);
    FieldHandle field;
    if (auto it = cache.find(key); it != cache.end()) {
      field = it->second;
    } else {
      field = NumberField::create(IntPoly(std::move(coeffs)), RationalInterval(lo, hi));
      cache.emplace(key, field);
    }
    if (!a.contains("coords")) return RealValue(FieldElement::generator(field));
    std::vector<BigRational> coords;
    for (const auto& c : a.at("coords")) coords.push_back(parse_rational(text_of(c, "coordinate")));
    coords.resize(static_cast<std::size_t>(field->degree()), BigRational(0));
    return RealValue(FieldElement(field, std::move(coords)));
  }
  throw InputError("a real value object needs one of rational, decimal, algebraic");
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

RealValue parse_real(const Json& j) {
  FieldCache cache;
  return parse_real_cached(j, cache);
}

std::vector<RealValue> parse_inputs(const Json& j) {
  const Json& arr = j.is_object() ? member(j, "inputs") : j;
  if (!arr.is_array() || arr.empty()) throw InputError("inputs must be a non-empty array");
  FieldCache cache;
  std::vector<RealValue> out;
  for (const auto& v : arr) out.push_back(parse_real_cached(v, cache));
  return out;
}

PartialQuotients parse_pq(const Json& j) {
  const Json& seqs = member(j, "sequences");
  if (!seqs.is_array() || seqs.empty()) throw InputError("sequences must be a non-empty array");
  std::vector<std::vector<BigInt>> s;
  for (const auto& seq : seqs) {
    if (!seq.is_array()) throw InputError("each sequence must be an array");
    std::vector<BigInt> v;
    for (const auto& e : seq) v.push_back(int_of(e, "partial quotient"));
    s.push_back(std::move(v));
  }
  const std::size_t m = s.size();
  if (j.contains("m") && j.at("m").get<std::size_t>() != m) throw InputError("m disagrees with the number of sequences");
  return PartialQuotients(m, std::move(s));
}

Json pq_to_json(const PartialQuotients& pq) {
  Json seqs = Json::array();
  for (const auto& s : pq.seqs) {
    Json a = Json::array();
    for (const auto& v : s) a.push_back(str(v));
    seqs.push_back(std::move(a));
  }
  Json j;
  j["m"] = pq.m;
  j["sequences"] = std::move(seqs);
  return j;
}

std::vector<ScheduleEntry> parse_schedule(const Json& j) {
  if (!j.is_array()) throw InputError("schedule must be an array");
  std::vector<ScheduleEntry> out;
  for (const auto& e : j) {
    out.push_back({int_of(member(e, "n"), "n"), int_of(member(e, "r"), "r"), int_of(member(e, "lambda"), "lambda")});
  }
  return out;
}

std::vector<EntryRule> parse_rules(const Json& j, std::uint64_t seed) {
  if (!j.is_array()) throw InputError("base must be an array of rule strings");
  std::vector<EntryRule> out;
  // Each random rule gets its own stream.
  std::uint64_t k = 0;
  for (const auto& r : j) out.push_back(EntryRule::parse(text_of(r, "rule"), seed + k++));
  return out;
}

Json to_json(const RationalInterval& iv) {
  Json j;
  j["lo"] = str(iv.lo());
  j["hi"] = str(iv.hi());
  return j;
}

Json to_json(const AdmissibilityReport& r) {
  Json j;
  j["admissible"] = r.ok();
  Json v = Json::array();
  for (const auto& x : r.violations) {
    Json e;
    e["index"] = x.index;
    e["condition"] = x.condition;
    v.push_back(std::move(e));
  }
  j["violations"] = std::move(v);
  return j;
}

Json to_json(const BoundReport& r) {
  Json j;
  j["ok"] = r.ok();
  j["depth"] = r.depth;
  j["numerators_checked"] = r.numerators_checked;
  j["box_checked"] = r.box_checked;
  j["tilde_checked"] = r.tilde_checked;
  j["empirical_k"] = str(r.empirical_k);
  if (r.violation) {
    Json v;
    v["index"] = r.violation->index;
    v["check"] = r.violation->check;
    v["detail"] = r.violation->detail;
    j["violation"] = std::move(v);
  } else {
    j["violation"] = nullptr;
  }
  return j;
}

Json to_json(const GrowthReport& r) {
  auto failure = [](const std::optional<GrowthFailure>& f) {
    if (!f) return Json(nullptr);
    Json v;
    v["index"] = f->index;
    v["detail"] = f->detail;
    return v;
  };
  Json j;
  j["ok"] = r.ok();
  j["depth"] = r.depth;
  j["psi_checked"] = r.psi_checked;
  j["psi_violation"] = failure(r.psi_violation);
  j["eta_checked"] = r.eta_checked;
  j["eta_violation"] = failure(r.eta_violation);
  j["loglog_checked"] = r.loglog_checked;
  if (r.loglog_checked) {
    j["k"] = to_decimal(r.k.lo(), 8) + ".." + to_decimal(r.k.hi(), 8);
  }
  j["loglog_violation"] = failure(r.loglog_violation);
  return j;
}

Json to_json(const CriterionReport& r) {
  Json j;
  j["criterion"] = r.criterion;
  j["depth"] = r.depth;
  Json hs = Json::array();
  for (const auto& h : r.hypotheses) {
    Json e;
    e["name"] = h.name;
    e["holds"] = h.holds;
    e["checked"] = h.checked;
    e["first_violation"] = index_or_null(h.first_violation);
    e["detail"] = h.detail;
    hs.push_back(std::move(e));
  }
  j["hypotheses"] = std::move(hs);
  Json ws = Json::array();
  for (const auto& w : r.witnesses) {
    Json e;
    e["index"] = w.index;
    e["coordinate"] = w.coordinate;
    e["value"] = w.value;
    ws.push_back(std::move(e));
  }
  j["witnesses"] = std::move(ws);
  Json notes = Json::object();
  for (const auto& [k, v] : r.notes) notes[k] = v;
  j["notes"] = std::move(notes);
  j["verdict"] = r.verdict();
  j["violated_at"] = index_or_null(r.violated_at());
  return j;
}

Json to_json(const CubicCertificate& c) {
  auto quartet = [](const CubicQuartet& q) { return Json::array({str(q.A), str(q.B), str(q.C), str(q.D)}); };
  auto coeffs = [](const IntPoly& p) {
    Json a = Json::array();
    for (const auto& v : p.coeffs()) a.push_back(str(v));
    return a;
  };
  Json x = Json::array();
  for (const auto& row : c.x) x.push_back(Json::array({str(row[0]), str(row[1]), str(row[2])}));
  Json beta_coords = Json::array();
  for (const auto& v : c.beta.coords()) beta_coords.push_back(str(v));

  Json j;
  j["x_matrix"] = std::move(x);
  j["alpha"]["poly"] = c.poly_alpha.to_string();
  j["alpha"]["coeffs"] = coeffs(c.poly_alpha);
  j["alpha"]["raw"] = quartet(c.raw_alpha);
  j["alpha"]["height"] = str(c.height_alpha);
  j["alpha"]["approx"] = to_decimal(c.alpha_interval.midpoint(), 50);
  j["alpha"]["interval"] = to_json(c.alpha_interval);
  j["beta"]["poly"] = c.poly_beta.to_string();
  j["beta"]["coeffs"] = coeffs(c.poly_beta);
  j["beta"]["raw"] = quartet(c.raw_beta);
  j["beta"]["height"] = str(c.height_beta);
  j["beta"]["approx"] = to_decimal(c.beta_interval.midpoint(), 50);
  j["beta"]["interval"] = to_json(c.beta_interval);
  j["beta"]["coords_in_alpha"] = std::move(beta_coords);
  j["c_last"] = str(c.c_last);
  j["height_bound"] = c.bound ? Json(str(*c.bound)) : Json(nullptr);
  j["bound_holds"] = c.bound_holds;
  j["residual_ok"] = c.residual_ok;
  j["residual_alpha"] = to_json(c.residual_alpha);
  j["residual_beta"] = to_json(c.residual_beta);
  j["matched_quotients"] = c.matched_quotients;
  return j;
}

}  // namespace mcf
