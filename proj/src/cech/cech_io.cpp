#include "dgc/cech_io.hpp"

namespace dgc {

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw InputError(what);
}

std::vector<std::vector<std::size_t>> set_list(const Json& j, const std::string& what) {
  require(j.is_array(), what + " must be an array of sets");
  std::vector<std::vector<std::size_t>> out;
  for (const auto& s : j) {
    require(s.is_array(), what + " must be an array of sets");
    std::vector<std::size_t> v;
    for (const auto& x : s) {
      require(x.is_number_integer() && x.get<long>() >= 0, what + " must hold nonnegative integers");
      v.push_back(x.get<std::size_t>());
    }
    out.push_back(std::move(v));
  }
  return out;
}

RawCover body(const Json& j) {
  require(j.is_object(), "cover must be an object");
  RawCover c;
  if (j.contains("points")) c.levels[{0, 0}] = set_list(j.at("points"), "points");
  if (j.contains("levels")) {
    require(j.at("levels").is_array(), "levels must be an array");
    for (const auto& l : j.at("levels")) {
      require(l.is_object() && l.contains("bidegree") && l.contains("sets"), "level needs bidegree and sets");
      const Json& b = l.at("bidegree");
      require(b.is_array() && b.size() == 2 && b[0].is_number_integer() && b[1].is_number_integer(),
              "bidegree must be [m, n]");
      const int m = b[0].get<int>(), n = b[1].get<int>();
      require(m >= 0 && n >= 0, "bidegree must be nonnegative");
      require(!c.levels.count({m, n}), "bidegree listed twice");
      c.levels[{m, n}] = set_list(l.at("sets"), "sets");
    }
  }
  if (j.contains("fill")) {
    const Json& f = j.at("fill");
    require(f.is_string(), "fill must be a string");
    if (f == "whole")
      c.fill = RawCover::Fill::Whole;
    else if (f == "singletons")
      c.fill = RawCover::Fill::Singletons;
    else
      throw InputError("fill must be 'whole' or 'singletons'");
  }
  return c;
}

}  // namespace

RawCover raw_cover_from_json(const Json& j) {
  try {
    check_header(j, "cover");
    return body(j);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(e.what());
  }
}

Json raw_cover_to_json(const RawCover& c) {
  Json levels = Json::array();
  for (const auto& [k, sets] : c.levels) levels.push_back(Json{{"bidegree", {k.first, k.second}}, {"sets", sets}});
  return Json{{"schema", 1},
              {"kind", "cover"},
              {"levels", levels},
              {"fill", c.fill == RawCover::Fill::Whole ? "whole" : "singletons"}};
}

std::vector<RawCover> cover_chain_from_json(const Json& j) {
  try {
    check_header(j, "cover_chain");
    require(j.contains("covers") && j.at("covers").is_array(), "covers must be an array");
    std::vector<RawCover> out;
    for (const auto& c : j.at("covers")) out.push_back(body(c));
    require(!out.empty(), "cover chain is empty");
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(e.what());
  }
}

}  // namespace dgc
