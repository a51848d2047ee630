#pragma once
// Quiver file format (JSON):
//   {"vertices": [ids], "arrows": [{"name","src","tgt","w1","w2"}],
//    "potential": [{"coeff": "p/q", "cycle": [names]}], "cut": [names]}
// Vertex ids are strings; integer ids are accepted and normalized to their
// decimal strings.  Saving uses ordered keys, 2-space indent, and a trailing
// newline, so canonical files round-trip byte-for-byte.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "quiver.hpp"

namespace coha {

struct QuiverFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuiverFile {
  Quiver quiver;
  Potential potential;
  std::vector<std::string> cut;
};

namespace detail {

inline std::string id_string(const nlohmann::ordered_json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw QuiverFormatError(std::string(what) + " must be a string or integer");
}

}  // namespace detail

inline QuiverFile parse_quiver_json(const nlohmann::ordered_json& j) {
  try {
    if (!j.is_object()) throw QuiverFormatError("quiver file must be a JSON object");
    std::vector<std::string> vertices;
    for (const auto& v : j.value("vertices", nlohmann::ordered_json::array()))
      vertices.push_back(detail::id_string(v, "vertex id"));

    std::vector<Arrow> arrows;
    for (const auto& a : j.value("arrows", nlohmann::ordered_json::array())) {
      Arrow arrow;
      arrow.name = a.at("name").get<std::string>();
      arrow.src = detail::id_string(a.at("src"), "arrow src");
      arrow.tgt = detail::id_string(a.at("tgt"), "arrow tgt");
      arrow.w1 = a.value("w1", 1);
      arrow.w2 = a.value("w2", 1);
      arrows.push_back(std::move(arrow));
    }
    Quiver q(std::move(vertices), std::move(arrows));

    std::vector<CycleTerm> terms;
    for (const auto& t : j.value("potential", nlohmann::ordered_json::array())) {
      CycleTerm term;
      term.coeff = parse_rational(t.at("coeff").get<std::string>());
      for (const auto& a : t.at("cycle")) term.cycle.push_back(a.get<std::string>());
      terms.push_back(std::move(term));
    }
    Potential w(std::move(terms));
    w.validate(q);

    std::vector<std::string> cut;
    for (const auto& c : j.value("cut", nlohmann::ordered_json::array())) {
      std::string name = c.get<std::string>();
      q.arrow(name);  // must exist
      cut.push_back(std::move(name));
    }
    return {std::move(q), std::move(w), std::move(cut)};
  } catch (const nlohmann::json::exception& e) {
    throw QuiverFormatError(std::string("malformed quiver file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw QuiverFormatError(std::string("invalid quiver data: ") + e.what());
  }
}

inline nlohmann::ordered_json quiver_json(const QuiverFile& f) {
  nlohmann::ordered_json j;
  j["vertices"] = f.quiver.vertices();
  j["arrows"] = nlohmann::ordered_json::array();
  for (const auto& a : f.quiver.arrows())
    j["arrows"].push_back({{"name", a.name}, {"src", a.src}, {"tgt", a.tgt},
                           {"w1", a.w1}, {"w2", a.w2}});
  j["potential"] = nlohmann::ordered_json::array();
  for (const auto& t : f.potential.terms())
    j["potential"].push_back({{"coeff", to_string(t.coeff)}, {"cycle", t.cycle}});
  j["cut"] = f.cut;
  return j;
}

inline std::string save_quiver_string(const QuiverFile& f) {
  return quiver_json(f).dump(2) + "\n";
}

inline QuiverFile load_quiver_string(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw QuiverFormatError(std::string("not valid JSON: ") + e.what());
  }
  return parse_quiver_json(j);
}

inline QuiverFile load_quiver_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw QuiverFormatError("cannot open quiver file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_quiver_string(ss.str());
}

inline void save_quiver_file(const QuiverFile& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw QuiverFormatError("cannot write quiver file: " + path);
  out << save_quiver_string(f);
}

}  // namespace coha
