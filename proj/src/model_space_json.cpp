#include "fracreg/model_space.hpp"

namespace fracreg {

namespace {

// Always "num/den", also for integers.
std::string fraction(const Rational& r) { return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator()); }

nlohmann::json hom_json(const Homogeneity& h) { return {{"a", fraction(h.a)}, {"b", h.b}}; }

Homogeneity hom_from(const nlohmann::json& j) { return {parse_rational(j.at("a").get<std::string>()), j.at("b").get<std::int64_t>()}; }

}  // namespace

nlohmann::json to_json(const ModelSpace& ms) {
  nlohmann::json j;
  j["params"] = {{"N", ms.params.N},
                 {"d", ms.params.d},
                 {"rho", fraction(ms.params.rho)},
                 {"alpha0", hom_json(ms.params.alpha0)},
                 {"noise", ms.params.noise == NoiseKind::White ? "white" : "custom"}};
  j["config"] = {{"maxh", fraction(ms.config.maxh)},
                 {"iter", ms.config.iter},
                 {"scope", std::string(to_string(ms.config.scope))},
                 {"cap", ms.config.cap}};
  j["converged"] = ms.converged;
  j["truncated"] = ms.truncated;
  j["iterations_run"] = ms.iterations_run;
  j["negative_sector_complete"] = ms.negative_sector_complete();
  auto hist = nlohmann::json::array();
  for (const auto& h : ms.history) hist.push_back({{"w", h.w}, {"u", h.u}});
  j["history"] = hist;
  j["h_F"] = h_F(ms).value;
  j["c_F"] = c_F(ms).value;
  j["h0_F"] = h0_F(ms).value;

  auto recs = nlohmann::json::array();
  for (const auto& r : ms.records) {
    const auto& t = r.symbol.type();
    auto roles = nlohmann::json::array();
    if (r.roles & kInW) roles.push_back("W");
    if (r.roles & kInU) roles.push_back("U");
    recs.push_back({{"encoding", r.symbol.encoding()},
                    {"symbol", render(r.symbol, static_cast<std::size_t>(ms.params.d) + 1)},
                    {"a", fraction(r.homogeneity.a)},
                    {"b", r.homogeneity.b},
                    {"p", t.p},
                    {"q", t.q},
                    {"k", t.k.padded(static_cast<std::size_t>(ms.params.d) + 1).components()},
                    {"generation", r.generation},
                    {"roles", roles}});
  }
  j["symbols"] = recs;
  return j;
}

ModelSpace model_space_from_json(const nlohmann::json& j) {
  ModelSpace ms;
  const auto& p = j.at("params");
  Rational rho = parse_rational(p.at("rho").get<std::string>());
  int N = p.at("N").get<int>();
  int d = p.at("d").get<int>();
  if (p.value("noise", std::string("white")) == "white")
    ms.params = Parameters::white(N, d, rho);
  else
    ms.params = Parameters::with_noise(N, d, rho, hom_from(p.at("alpha0")));

  const auto& c = j.at("config");
  ms.config.maxh = parse_rational(c.at("maxh").get<std::string>());
  ms.config.iter = c.at("iter").get<int>();
  ms.config.scope = parse_build_scope(c.value("scope", std::string("full")));
  ms.config.cap = c.value("cap", ms.config.cap);

  ms.converged = j.at("converged").get<bool>();
  ms.truncated = j.value("truncated", false);
  ms.iterations_run = j.at("iterations_run").get<int>();
  for (const auto& h : j.value("history", nlohmann::json::array()))
    ms.history.push_back({h.at("w").get<std::size_t>(), h.at("u").get<std::size_t>()});

  for (const auto& r : j.at("symbols")) {
    SymbolRecord rec{parse_encoding(r.at("encoding").get<std::string>()), hom_from(r),
                     r.at("generation").get<int>(), 0};
    for (const auto& role : r.at("roles")) {
      auto s = role.get<std::string>();
      if (s == "W") rec.roles |= kInW;
      else if (s == "U") rec.roles |= kInU;
      else throw std::invalid_argument("unknown role '" + s + "'");
    }
    if (rec.homogeneity != homogeneity_of(rec.symbol, ms.params))
      throw std::invalid_argument("stored homogeneity does not match symbol " + rec.symbol.encoding());
    ms.records.push_back(std::move(rec));
  }
  return ms;
}

}  // namespace fracreg
