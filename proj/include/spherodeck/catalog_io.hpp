#pragma once

#include "spherodeck/catalog.hpp"

namespace spherodeck {

namespace detail {

/// Emits an entry as int when integral, as an exact "p/q" string when a
/// small-denominator rational reproduces the double bit-for-bit, else as a
/// plain double.
inline json emit_number(double x) {
  if (x == std::floor(x) && std::abs(x) < 9.0e15) return static_cast<std::int64_t>(x);
  for (int q = 2; q <= 64; ++q) {
    const double p = std::round(x * q);
    if (std::abs(p) < 9.0e15 && p / static_cast<double>(q) == x)
      return std::to_string(static_cast<std::int64_t>(p)) + "/" + std::to_string(q);
  }
  return x;
}

inline double read_number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw SchemaError("expected number or rational string", where);
}

inline json emit_matrix(const MatrixXd& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) rows.push_back(emit_number(m(i, j)));
  return rows;
}

inline MatrixXd read_matrix(const json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n * n)
    throw SchemaError("expected flat row-major matrix of size " + std::to_string(n * n), where);
  MatrixXd m(n, n);
  int idx = 0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = read_number(j[idx++], where);
  return m;
}

inline json emit_vector(const VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(emit_number(v(i)));
  return out;
}

inline std::string family_name(BlockFamily f) {
  switch (f) {
    case BlockFamily::SL: return "SL";
    case BlockFamily::GL: return "GL";
    case BlockFamily::Sp: return "Sp";
    case BlockFamily::OForm: return "O_form";
  }
  return "GL";
}

inline BlockFamily family_from(const std::string& s, const std::string& where) {
  if (s == "SL") return BlockFamily::SL;
  if (s == "GL") return BlockFamily::GL;
  if (s == "Sp") return BlockFamily::Sp;
  if (s == "O_form") return BlockFamily::OForm;
  throw SchemaError("unknown block family " + s, where);
}

inline std::string decomposition_name(DecompositionKind k) {
  switch (k) {
    case DecompositionKind::GroupKak: return "group_kak";
    case DecompositionKind::TripleClosedForm: return "triple_closed_form";
    case DecompositionKind::TripleReduced: return "triple_reduced";
    case DecompositionKind::GrossPrasad: return "gross_prasad";
    case DecompositionKind::SpChain: return "sp_chain";
    case DecompositionKind::Generic: return "generic";
  }
  return "generic";
}

inline DecompositionKind decomposition_from(const std::string& s, const std::string& where) {
  if (s == "group_kak") return DecompositionKind::GroupKak;
  if (s == "triple_closed_form") return DecompositionKind::TripleClosedForm;
  if (s == "triple_reduced") return DecompositionKind::TripleReduced;
  if (s == "gross_prasad") return DecompositionKind::GrossPrasad;
  if (s == "sp_chain") return DecompositionKind::SpChain;
  if (s == "generic") return DecompositionKind::Generic;
  throw SchemaError("unknown decomposition kind " + s, where);
}

inline std::string rep_kind_name(RepKind k) {
  switch (k) {
    case RepKind::Conjugation: return "conjugation";
    case RepKind::StdTwist: return "std_twist";
    case RepKind::DetTwist: return "det_twist";
  }
  return "conjugation";
}

inline RepKind rep_kind_from(const std::string& s, const std::string& where) {
  if (s == "conjugation") return RepKind::Conjugation;
  if (s == "std_twist") return RepKind::StdTwist;
  if (s == "det_twist") return RepKind::DetTwist;
  throw SchemaError("unknown rep kind " + s, where);
}

}  // namespace detail

inline json serialize_space(const SpaceDefinition& sp) {
  using namespace detail;
  json j;
  j["schema_version"] = 1;
  j["name"] = sp.name;
  {
    json g;
    g["name"] = sp.g->name();
    g["n"] = sp.g->ambient_size();
    json b = json::array();
    for (const auto& m : sp.g->basis()) b.push_back(emit_matrix(m));
    g["basis"] = b;
    g["theta"] = "neg_transpose";
    j["g"] = g;
  }
  json hb = json::array();
  for (const auto& m : sp.h_basis) hb.push_back(emit_matrix(m));
  j["h_basis"] = hb;
  json ab = json::array();
  for (const auto& m : sp.a_basis) ab.push_back(emit_matrix(m));
  j["a_basis"] = ab;
  json blocks = json::array();
  for (const auto& b : sp.blocks) {
    json bj;
    bj["offset"] = b.offset;
    bj["size"] = b.size;
    bj["family"] = family_name(b.family);
    if (b.form.size() > 0) {
      json f = json::array();
      for (int r = 0; r < b.form.rows(); ++r)
        for (int c = 0; c < b.form.cols(); ++c) f.push_back(emit_number(b.form(r, c)));
      bj["form"] = f;
    }
    blocks.push_back(bj);
  }
  j["blocks"] = blocks;
  json kc = json::array();
  for (const auto& m : sp.k_component_reps) kc.push_back(emit_matrix(m));
  j["k_component_reps"] = kc;
  json hc = json::array();
  for (const auto& m : sp.h_component_reps) hc.push_back(emit_matrix(m));
  j["h_component_reps"] = hc;
  json reps = json::array();
  for (const auto& r : sp.spherical_reps) {
    json rj;
    rj["name"] = r.name;
    rj["kind"] = rep_kind_name(r.kind);
    if (r.kind == RepKind::Conjugation) {
      rj["left"] = r.left;
      rj["right"] = r.right;
    }
    if (r.kind == RepKind::StdTwist) rj["factor"] = r.factor;
    if (r.kind != RepKind::Conjugation) rj["det_powers"] = r.det_powers;
    rj["u_H"] = emit_vector(r.u_H);
    rj["lambda"] = emit_vector(r.lambda.transpose());
    reps.push_back(rj);
  }
  j["spherical_reps"] = reps;
  json presets = json::array();
  for (const auto& p : sp.exponent_presets) {
    json pj;
    pj["name"] = p.name;
    json exps = json::array();
    for (const auto& e : p.exponents) {
      json one = json::array();
      for (int i = 0; i < e.size(); ++i)
        one.push_back(json::array({emit_number(e(i).real()), emit_number(e(i).imag())}));
      exps.push_back(one);
    }
    pj["exponents"] = exps;
    pj["face_multiplicities"] = p.face_multiplicities;
    pj["note"] = p.note;
    presets.push_back(pj);
  }
  j["exponent_presets"] = presets;
  json exp;
  for (const auto& [key, flag] : sp.expected) {
    json fj;
    if (flag.value.has_value())
      fj["value"] = *flag.value;
    else
      fj["value"] = nullptr;
    fj["source"] = flag.source;
    fj["note"] = flag.note;
    exp[key] = fj;
  }
  j["expected"] = exp;
  j["decomposition"] = detail::decomposition_name(sp.decomposition);
  j["experimental"] = sp.experimental;
  return j;
}

/// Parses a space document. Schema problems throw SchemaError with a
/// pointer; invariant failures surface from finalize_space as a collected
/// ValidationError.
inline SpaceDefinition load_space_json(const json& j) {
  using namespace detail;
  auto need = [&](const json& o, const char* key, const std::string& where) -> const json& {
    if (!o.contains(key)) throw SchemaError(std::string("missing key ") + key, where);
    return o[key];
  };
  SpaceDefinition sp;
  sp.name = need(j, "name", "/name").get<std::string>();
  const json& gj = need(j, "g", "/g");
  const int n = need(gj, "n", "/g/n").get<int>();
  std::vector<MatrixXd> basis;
  const json& bj = need(gj, "basis", "/g/basis");
  for (std::size_t i = 0; i < bj.size(); ++i)
    basis.push_back(read_matrix(bj[i], n, "/g/basis/" + std::to_string(i)));
  if (need(gj, "theta", "/g/theta").get<std::string>() != "neg_transpose")
    throw SchemaError("only the neg_transpose involution is supported", "/g/theta");
  sp.g = std::make_shared<LieAlgebraPresentation>(
      need(gj, "name", "/g/name").get<std::string>(), n, basis);
  for (std::size_t i = 0; i < need(j, "h_basis", "/h_basis").size(); ++i)
    sp.h_basis.push_back(read_matrix(j["h_basis"][i], n, "/h_basis/" + std::to_string(i)));
  for (std::size_t i = 0; i < need(j, "a_basis", "/a_basis").size(); ++i)
    sp.a_basis.push_back(read_matrix(j["a_basis"][i], n, "/a_basis/" + std::to_string(i)));
  for (std::size_t i = 0; i < need(j, "blocks", "/blocks").size(); ++i) {
    const json& blk = j["blocks"][i];
    const std::string where = "/blocks/" + std::to_string(i);
    GroupBlock b;
    b.offset = need(blk, "offset", where).get<int>();
    b.size = need(blk, "size", where).get<int>();
    b.family = family_from(need(blk, "family", where).get<std::string>(), where);
    if (blk.contains("form")) {
      const json& f = blk["form"];
      b.form.resize(b.size, b.size);
      int idx = 0;
      for (int r = 0; r < b.size; ++r)
        for (int c = 0; c < b.size; ++c) b.form(r, c) = read_number(f[idx++], where + "/form");
    }
    sp.blocks.push_back(b);
  }
  for (std::size_t i = 0; i < need(j, "k_component_reps", "/k_component_reps").size(); ++i)
    sp.k_component_reps.push_back(
        read_matrix(j["k_component_reps"][i], n, "/k_component_reps/" + std::to_string(i)));
  for (std::size_t i = 0; i < need(j, "h_component_reps", "/h_component_reps").size(); ++i)
    sp.h_component_reps.push_back(
        read_matrix(j["h_component_reps"][i], n, "/h_component_reps/" + std::to_string(i)));
  if (j.contains("spherical_reps"))
    for (std::size_t i = 0; i < j["spherical_reps"].size(); ++i) {
      const json& rj = j["spherical_reps"][i];
      const std::string where = "/spherical_reps/" + std::to_string(i);
      SphericalRepData r;
      r.name = need(rj, "name", where).get<std::string>();
      r.kind = rep_kind_from(need(rj, "kind", where).get<std::string>(), where);
      if (r.kind == RepKind::Conjugation) {
        r.left = need(rj, "left", where).get<int>();
        r.right = need(rj, "right", where).get<int>();
      }
      if (r.kind == RepKind::StdTwist) r.factor = need(rj, "factor", where).get<int>();
      if (rj.contains("det_powers")) r.det_powers = rj["det_powers"].get<std::vector<int>>();
      const json& uj = need(rj, "u_H", where);
      r.u_H.resize(uj.size());
      for (std::size_t t = 0; t < uj.size(); ++t)
        r.u_H(static_cast<int>(t)) = read_number(uj[t], where + "/u_H");
      if (rj.contains("lambda")) {
        const json& lj = rj["lambda"];
        r.lambda.resize(lj.size());
        for (std::size_t t = 0; t < lj.size(); ++t)
          r.lambda(static_cast<int>(t)) = read_number(lj[t], where + "/lambda");
      }
      sp.spherical_reps.push_back(std::move(r));
    }
  if (j.contains("exponent_presets"))
    for (std::size_t i = 0; i < j["exponent_presets"].size(); ++i) {
      const json& pj = j["exponent_presets"][i];
      const std::string where = "/exponent_presets/" + std::to_string(i);
      ExponentPreset p;
      p.name = need(pj, "name", where).get<std::string>();
      for (const auto& ej : need(pj, "exponents", where)) {
        Eigen::VectorXcd e(ej.size());
        for (std::size_t t = 0; t < ej.size(); ++t)
          e(static_cast<int>(t)) = std::complex<double>(read_number(ej[t][0], where),
                                                        read_number(ej[t][1], where));
        p.exponents.push_back(e);
      }
      p.face_multiplicities =
          need(pj, "face_multiplicities", where).get<std::vector<int>>();
      if (pj.contains("note")) p.note = pj["note"].get<std::string>();
      sp.exponent_presets.push_back(std::move(p));
    }
  if (j.contains("expected"))
    for (const auto& [key, fj] : j["expected"].items()) {
      ExpectedFlag f;
      if (fj.contains("value") && !fj["value"].is_null()) f.value = fj["value"].get<bool>();
      f.source = fj.value("source", "unverified");
      f.note = fj.value("note", "");
      sp.expected[key] = f;
    }
  sp.decomposition = decomposition_from(
      need(j, "decomposition", "/decomposition").get<std::string>(), "/decomposition");
  sp.experimental = j.value("experimental", false);
  finalize_space(sp);
  return sp;
}

/// Loads a space by catalog name, by file path, or from
/// $SPHERODECK_CATALOG_DIR/<name>.json when that variable is set.
inline SpaceDefinition load_space(const std::string& name_or_path) {
  namespace fs = std::filesystem;
  if (fs::exists(name_or_path) && fs::is_regular_file(name_or_path)) {
    std::ifstream in(name_or_path);
    json j;
    try {
      in >> j;
    } catch (const std::exception& e) {
      throw SchemaError(std::string("invalid JSON: ") + e.what(), name_or_path);
    }
    return load_space_json(j);
  }
  if (const char* dir = std::getenv("SPHERODECK_CATALOG_DIR")) {
    const fs::path p = fs::path(dir) / (name_or_path + ".json");
    if (fs::exists(p)) return load_space(p.string());
  }
  return build_space(name_or_path);
}

}  // namespace spherodeck
