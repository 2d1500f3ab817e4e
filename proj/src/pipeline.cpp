#include "sgen2/pipeline.hpp"

#include <chrono>
#include <random>
#include <set>

#include "sgen2/error.hpp"

namespace sgen2 {

namespace {

json int_json(const Int& x) {
  if (x.fits_slong_p()) return x.get_si();
  return to_string(x);
}

json ints_json(const IntVec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(int_json(x));
  return out;
}

json elements_json(const std::vector<FieldElement>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

[[noreturn]] void bad_config(const std::string& what) { throw Error(Errc::ConfigInvalid, what); }

Int int_from_json(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Rat r = parse_rat(j.get<std::string>());
    if (r.get_den() != 1) bad_config("expected an integer, got " + j.get<std::string>());
    return r.get_num();
  }
  bad_config("expected an integer, got " + j.dump());
}

IntVec intvec_from_json(const json& j) {
  if (!j.is_array()) bad_config("expected an array of integers");
  IntVec out;
  for (const auto& x : j) out.push_back(int_from_json(x));
  return out;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) bad_config(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) bad_config("unknown key '" + key + "' in " + where);
  }
}

long long_from_json(const json& j, const std::string& what) {
  if (!j.is_number_integer()) bad_config(what + " must be an integer");
  return j.get<long>();
}

}  // namespace

// ---------------------------------------------------------------- serialization

json to_json(const Rat& x) {
  Rat y = x;
  y.canonicalize();
  return to_string(y);
}

json to_json(const RatVec& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

json to_json(const FieldElement& x) { return to_json(x.coords()); }

json to_json(const Mat2& m) {
  // Built explicitly: brace lists of two-element arrays would become objects.
  json top = json::array(), row = json::array();
  row.push_back(to_json(m.a));
  row.push_back(to_json(m.b));
  top.push_back(row);
  row = json::array();
  row.push_back(to_json(m.c));
  row.push_back(to_json(m.d));
  top.push_back(row);
  return top;
}

json to_json(const PrimeIdeal& P) {
  return {{"p", int_json(P.p)},       {"e", P.e}, {"f", P.f}, {"pi", to_json(P.pi)},
          {"norm", int_json(P.residue_size())}};
}

json to_json(const AlphaCertificate& c) {
  json avoid = json::array();
  for (const auto& a : c.avoidance) avoid.push_back({{"subspace", a.subspace}, {"witness", a.witness}, {"passed", a.passed}});
  json table = json::array();
  for (const auto& e : c.index_table) table.push_back({{"n", e.n}, {"index", int_json(e.index)}, {"level", e.level}});
  return {{"alpha", to_json(c.alpha)},
          {"torsion_exponent", c.torsion_exponent},
          {"fund_exponents", ints_json(c.fund_exponents)},
          {"s_exponents", ints_json(c.s_exponents)},
          {"search_norm", c.search_norm},
          {"valuations", c.valuations},
          {"minimal_poly", c.minimal_poly.to_string()},
          {"generates_field", c.generates_K},
          {"avoidance", avoid},
          {"power", c.m},
          {"b", ints_json(c.b)},
          {"absorbed_unit", to_json(c.absorbed_unit)},
          {"inverse_cofactors", elements_json(c.inverse_cofactors)},
          {"index_table", table}};
}

json to_json(const GeneratorTriple& T) {
  json j = {{"case", T.classification.tag == CaseTag::Case1 ? "1" : "2"},
            {"alpha", to_json(T.alpha)},
            {"base_alpha", to_json(T.base_alpha)},
            {"h", T.h},
            {"gamma", to_json(T.gamma)},
            {"psi1", to_json(T.psi1)},
            {"psi2", to_json(T.psi2)}};
  if (T.cm)
    j["cm"] = {{"F", T.cm->F.label()}, {"d", to_json(T.cm->d)}, {"sqrt_minus_d", to_json(T.cm->sqrt_minus_d)}};
  return j;
}

json to_json(const IdentityReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e = {{"name", c.name}, {"instances", c.instances}, {"failures", c.failures}};
    if (c.failures) e["first_failure"] = c.first_failure;
    checks.push_back(e);
  }
  return {{"passed", r.passed()}, {"checks", checks}};
}

json to_json(const IdealLadder& L) {
  json j = {{"m", int_json(L.m)}, {"a_level", L.a_level}, {"a_in_hZ[alpha^2]", L.a_in_hZ}};
  if (L.has_case2) {
    j["N"] = L.N;
    j["b_factor"] = to_json(L.b_factor);
    j["a_over_b"] = int_json(L.a_over_b);
    j["c_index"] = int_json(L.c_index);
    j["c_level"] = L.c_level;
    j["c_in_a"] = L.c_in_a;
    j["q_index"] = int_json(L.q_scale);
    j["q_level"] = L.q_level;
    j["q_in_c_plus_sqrt_c"] = L.q_contained;
  }
  j["passed"] = L.passed();
  return j;
}

json to_json(const ModPReport& r) {
  return {{"prime", to_json(r.P)},        {"q", int_json(r.q)},   {"reached", r.reached}, {"expected", r.expected},
          {"pass", r.pass},               {"radius", r.radius},   {"states", r.states}};
}

Rat rat_from_json(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const std::exception&) {
      bad_config("not a rational: " + j.get<std::string>());
    }
  }
  bad_config("expected a rational, got " + j.dump());
}

RatVec ratvec_from_json(const json& j) {
  if (!j.is_array()) bad_config("expected an array of rationals");
  RatVec out;
  for (const auto& x : j) out.push_back(rat_from_json(x));
  return out;
}

Datasheet datasheet_from_json(const json& j) {
  check_keys(j, {"integral_basis", "fundamental_units", "subfields", "class_orders", "torsion"}, "datasheet");
  Datasheet ds;
  if (j.contains("integral_basis"))
    for (const auto& row : j.at("integral_basis")) ds.integral_basis.push_back(ratvec_from_json(row));
  if (j.contains("fundamental_units"))
    for (const auto& u : j.at("fundamental_units")) ds.fundamental_units.push_back(ratvec_from_json(u));
  if (j.contains("subfields"))
    for (const auto& s : j.at("subfields")) {
      check_keys(s, {"poly", "embedding", "datasheet"}, "subfield");
      Datasheet::Subfield sub{intvec_from_json(s.at("poly")), ratvec_from_json(s.at("embedding")), nullptr};
      if (s.contains("datasheet")) sub.datasheet = std::make_shared<Datasheet>(datasheet_from_json(s.at("datasheet")));
      ds.subfields.push_back(std::move(sub));
    }
  if (j.contains("class_orders"))
    for (const auto& c : j.at("class_orders")) {
      check_keys(c, {"ideal", "order", "generator"}, "class order");
      Datasheet::ClassOrder co;
      for (const auto& row : c.at("ideal")) co.hnf.push_back(intvec_from_json(row));
      co.order = long_from_json(c.at("order"), "class order");
      co.generator = ratvec_from_json(c.at("generator"));
      ds.class_orders.push_back(std::move(co));
    }
  if (j.contains("torsion")) {
    const auto& t = j.at("torsion");
    check_keys(t, {"order", "generator"}, "torsion");
    ds.torsion = Datasheet::Torsion{long_from_json(t.at("order"), "torsion order"), ratvec_from_json(t.at("generator"))};
  }
  return ds;
}

// ---------------------------------------------------------------- configuration

InstanceConfig parse_config(const json& j) {
  InstanceConfig c;
  try {
    check_keys(j, {"field", "S", "h", "N", "verify", "seed", "alpha_bound", "name"}, "config");
    c.echo = j;
    const auto& f = j.at("field");
    check_keys(f, {"poly", "datasheet"}, "field");
    c.poly = intvec_from_json(f.at("poly"));
    if (f.contains("datasheet")) c.datasheet = datasheet_from_json(f.at("datasheet"));
    if (!j.at("S").is_array()) bad_config("S must be an array");
    for (const auto& s : j.at("S")) {
      check_keys(s, {"p", "select"}, "S entry");
      PrimeSelection sel;
      sel.p = long_from_json(s.at("p"), "p");
      if (sel.p < 2 || !is_probable_prime(Int(sel.p))) bad_config("p = " + std::to_string(sel.p) + " is not prime");
      const json sj = s.value("select", json("all"));
      if (sj.is_string()) {
        if (sj.get<std::string>() != "all") bad_config("select must be \"all\", {\"index\": i} or {\"generator\": [...]}");
      } else if (sj.is_object() && sj.contains("index")) {
        check_keys(sj, {"index"}, "select");
        long idx = long_from_json(sj.at("index"), "index");
        if (idx < 0) bad_config("index must be non-negative");
        sel.kind = PrimeSelection::Kind::Index;
        sel.index = static_cast<size_t>(idx);
      } else if (sj.is_object() && sj.contains("generator")) {
        check_keys(sj, {"generator"}, "select");
        sel.kind = PrimeSelection::Kind::Generator;
        sel.generator = ratvec_from_json(sj.at("generator"));
      } else {
        bad_config("select must be \"all\", {\"index\": i} or {\"generator\": [...]}");
      }
      c.S.push_back(std::move(sel));
    }
    if (j.contains("h")) c.h = long_from_json(j.at("h"), "h");
    if (c.h < 1) bad_config("h must be a positive integer");
    if (j.contains("N")) {
      const auto& n = j.at("N");
      if (n.is_string() && n.get<std::string>() == "search") {
        c.N.reset();
      } else {
        c.N = long_from_json(n, "N");
        if (*c.N < 1) bad_config("N must be a positive integer or \"search\"");
      }
    }
    if (j.contains("verify")) {
      const auto& v = j.at("verify");
      check_keys(v, {"primes", "q_bound", "r_range", "s_range", "witness_samples", "ideal_samples"}, "verify");
      auto count = [&](const char* key, size_t& out) {
        if (!v.contains(key)) return;
        long x = long_from_json(v.at(key), key);
        if (x < 0) bad_config(std::string(key) + " must be non-negative");
        out = static_cast<size_t>(x);
      };
      count("primes", c.verify.primes);
      count("witness_samples", c.verify.witness_samples);
      count("ideal_samples", c.verify.ideal_samples);
      if (v.contains("q_bound")) c.verify.q_bound = long_from_json(v.at("q_bound"), "q_bound");
      if (c.verify.q_bound < 2 || c.verify.q_bound > 10000) bad_config("q_bound must lie in [2, 10000]");
      auto range = [&](const char* key, long& lo, long& hi) {
        if (!v.contains(key)) return;
        const auto& r = v.at(key);
        if (!r.is_array() || r.size() != 2) bad_config(std::string(key) + " must be [lo, hi]");
        lo = long_from_json(r[0], key);
        hi = long_from_json(r[1], key);
        if (lo > hi) bad_config(std::string(key) + " is empty");
      };
      range("r_range", c.verify.ranges.r_lo, c.verify.ranges.r_hi);
      range("s_range", c.verify.ranges.s_lo, c.verify.ranges.s_hi);
    }
    if (j.contains("seed")) c.seed = static_cast<std::uint64_t>(long_from_json(j.at("seed"), "seed"));
    if (j.contains("alpha_bound")) c.alpha_bound = long_from_json(j.at("alpha_bound"), "alpha_bound");
    if (c.alpha_bound < 1) bad_config("alpha_bound must be positive");
  } catch (const json::exception& e) {
    bad_config(e.what());
  }
  return c;
}

PrimeSet resolve_primes(const FieldPtr& K, const std::vector<PrimeSelection>& sel) {
  std::vector<PrimeIdeal> out;
  auto add = [&](const PrimeIdeal& P) {
    for (const auto& Q : out)
      if (Q == P) bad_config("prime above " + to_string(P.p) + " selected twice");
    out.push_back(P);
  };
  for (const auto& s : sel) {
    auto factors = factor_rational_prime(K, s.p);
    switch (s.kind) {
      case PrimeSelection::Kind::All:
        for (const auto& f : factors) add(f.prime);
        break;
      case PrimeSelection::Kind::Index:
        if (s.index >= factors.size())
          bad_config("p = " + std::to_string(s.p) + " has " + std::to_string(factors.size()) + " prime factors");
        add(factors[s.index].prime);
        break;
      case PrimeSelection::Kind::Generator: {
        if (s.generator.size() != K->degree()) bad_config("generator has the wrong length");
        FieldElement g = K->element(s.generator);
        if (!K->is_integral(g)) bad_config("generator must be integral");
        Ideal I = Ideal::generated_by(K, {K->from_int(s.p), g});
        std::optional<PrimeIdeal> hit;
        for (const auto& f : factors)
          if (f.prime.ideal == I) hit = f.prime;
        if (!hit) bad_config("(" + std::to_string(s.p) + ", generator) is not a prime of K");
        add(*hit);
        break;
      }
    }
  }
  return PrimeSet::make(K, out);
}

// ---------------------------------------------------------------- pipelines

Command parse_command(const std::string& name) {
  if (name == "analyze") return Command::Analyze;
  if (name == "alpha") return Command::Alpha;
  if (name == "generate") return Command::Generate;
  if (name == "verify") return Command::Verify;
  if (name == "examples") return Command::Examples;
  throw Error(Errc::ConfigInvalid, "unknown command " + name);
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::CardinalityTooSmall:
    case Errc::HypothesisFails:
    case Errc::SearchExhausted:
    case Errc::NotStabilized:
    case Errc::OrderBoundExceeded:
    case Errc::InconsistentCM:
      return 2;
    case Errc::IdentityFailed:
    case Errc::NotInLattice:
      return 3;
    default:
      return 1;
  }
}

namespace {

const char* command_name(Command c) {
  switch (c) {
    case Command::Analyze: return "analyze";
    case Command::Alpha: return "alpha";
    case Command::Generate: return "generate";
    case Command::Verify: return "verify";
    case Command::Examples: return "examples";
  }
  return "?";
}

class Stopwatch {
 public:
  void lap(const std::string& stage) {
    auto now = std::chrono::steady_clock::now();
    laps_[stage] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }
  const json& laps() const { return laps_; }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  json laps_ = json::object();
};

json analysis_json(const PrimeSet& S, const SUnitBasis& B, const CaseClassification& cls,
                   const std::vector<SubfieldDescriptor>& subfields) {
  const auto& K = S.field;
  json field = {{"poly", ints_json(K->defining_poly())},
                {"degree", K->degree()},
                {"signature", {K->r1(), K->r2()}},
                {"discriminant", int_json(K->discriminant())},
                {"tier", K->tier() == Tier::Automatic ? "automatic" : "datasheet"}};
  if (K->tier() == Tier::Datasheet) {
    field["asserted_irreducible"] = K->asserted_irreducible();
    field["subfield_list"] = "asserted complete by the datasheet";
  }
  json primes = json::array();
  for (const auto& P : S.finite) primes.push_back(to_json(P));
  json units = {{"rank", B.rank()},
                {"torsion_order", B.torsion.order},
                {"torsion_generator", to_json(B.torsion.generator)},
                {"fundamental_units", elements_json(B.fund_units)},
                {"s_generators", elements_json(B.s_gens)}};
  json table = json::array();
  for (const auto& r : cls.rank_table)
    table.push_back({{"subfield", r.subfield}, {"intersection_rank", r.intersection_rank}, {"s_unit_rank", r.s_unit_rank}});
  json cm = nullptr;
  if (auto c = is_cm(K)) cm = {{"F", c->F->describe()}, {"d", to_json(c->d)}, {"sqrt_minus_d", to_json(c->sqrt_minus_d)}};
  json j = {{"field", field},
            {"S", {{"card", S.card()}, {"infinite", S.infinite_count()}, {"finite", primes}}},
            {"s_units", units},
            {"cm", cm},
            {"rank_table", table},
            {"case", cls.tag == CaseTag::Case1 ? "1" : "2"}};
  if (cls.witness) {
    j["witness_subfield"] = subfields[*cls.witness].label();
    j["split_prime_check"] = split_prime_check(S, subfields[*cls.witness]);
  }
  return j;
}

// Targets h * sum s_j alpha^{2j} (times sqrt(-d) on the upper side in Case 2).
FieldElement sample_target(const GeneratorTriple& T, std::mt19937_64& rng, bool upper) {
  const auto& K = T.S.field;
  std::uniform_int_distribution<long> coef(-5, 5);
  FieldElement a2 = T.alpha * T.alpha, p = K->one(), x = K->zero();
  for (int j = 0; j <= 4; ++j, p = p * a2) x = x + Rat(coef(rng)) * p;
  FieldElement unit = K->from_int(T.h);
  if (upper && T.cm) unit = unit * T.cm->sqrt_minus_d;
  return unit * x;
}

json verification_json(const GeneratorTriple& T, const InstanceConfig& c, const RunOptions& opts, Stopwatch& sw,
                       bool& overall) {
  std::vector<long> Ns;
  if (T.cm) {
    if (c.N) {
      Ns = {*c.N};
    } else {
      for (long n = 1; n <= 24; ++n) Ns.push_back(n);
    }
  }
  json ladders = json::array();
  std::vector<IdealLadder> built;
  if (Ns.empty()) {
    built.push_back(ideal_ladder(T, 1));
  } else {
    for (long n : Ns) built.push_back(ideal_ladder(T, n));
  }
  bool ladder_ok = true;
  for (const auto& L : built) {
    ladders.push_back(to_json(L));
    ladder_ok = ladder_ok && L.passed();
  }
  sw.lap("ladder");

  auto samples = sample_ideal(T, built[0].m, c.verify.ideal_samples, c.seed);
  auto ids = identity_suite(T, c.verify.ranges, samples, Ns);
  sw.lap("identities");

  std::mt19937_64 rng(c.seed);
  size_t ok = 0, longest = 0;
  json failures = json::array();
  for (size_t i = 0; i < c.verify.witness_samples; ++i) {
    Side side = i % 2 == 0 ? Side::Upper : Side::Lower;
    FieldElement x = sample_target(T, rng, side == Side::Upper);
    auto w = elementary_witness(T, x, side);
    Mat2 expected = side == Side::Upper ? Mat2::upper(x) : Mat2::lower(x);
    if (evaluate(T, w) == expected) {
      ++ok;
    } else {
      failures.push_back(to_json(x));
    }
    longest = std::max(longest, w.letters.size());
  }
  json witnesses = {{"sampled", c.verify.witness_samples}, {"verified", ok}, {"longest_word", longest}};
  if (!failures.empty()) witnesses["failures"] = failures;
  sw.lap("witnesses");

  // The level of the ladder: the construction says nothing about primes
  // dividing it, so they are flagged in the report.
  Int level = T.h * (T.cm ? built[0].q_scale : built[0].m);
  auto primes = admissible_primes(T, c.verify.primes, c.verify.q_bound);
  auto reports = modp_batch(T, primes, opts.parallel, c.verify.q_bound);
  json modp = json::array();
  bool modp_ok = true;
  for (const auto& r : reports) {
    json e = to_json(r);
    e["divides_level"] = level % r.P.p == 0;
    modp.push_back(e);
    modp_ok = modp_ok && r.pass;
  }
  sw.lap("modp");

  overall = ids.passed() && ladder_ok && ok == c.verify.witness_samples && modp_ok;
  return {{"identities", to_json(ids)},
          {"ladders", ladders},
          {"level", int_json(level)},
          {"witnesses", witnesses},
          {"modp", modp},
          {"overall", overall}};
}

RunResult run_instance(Command cmd, const InstanceConfig& c, const RunOptions& opts) {
  RunResult out;
  out.report = {{"schema", 1}, {"command", command_name(cmd)}, {"instance", c.echo}};
  Stopwatch sw;
  try {
    auto K = create_field(c.poly, c.datasheet);
    auto S = resolve_primes(K, c.S);
    sw.lap("field");
    auto B = s_unit_basis(S);
    if (B.rank() + 1 != S.card()) throw Error(Errc::IdentityFailed, "S-unit rank differs from card(S) - 1");
    auto subfields = proper_subfields(S);
    auto cls = classify_case(S, subfields);
    out.report["analysis"] = analysis_json(S, B, cls, subfields);
    sw.lap("analysis");
    if (cmd != Command::Analyze) {
      auto T = build_generators(S, c.h, c.alpha_bound);
      AlphaCertificate cert = T.certificate;
      if (cert.index_table.empty())
        for (long n : {1, 2, 3}) {
          auto r = zalpha_index(T.ring, T.base_alpha, n);
          cert.index_table.push_back({n, r.index, r.level});
        }
      json a = to_json(cert);
      if (T.cm) {
        a["field"] = T.cm->F.label();
        json below = json::array();
        for (const auto& P : T.alpha_S.finite) below.push_back(to_json(P));
        a["S_of_field"] = below;
        a["embedded_alpha"] = to_json(T.base_alpha);
      }
      out.report["alpha"] = a;
      sw.lap("alpha");
      if (cmd != Command::Alpha) out.report["triple"] = to_json(T);
      if (cmd == Command::Verify) {
        bool overall = false;
        out.report["verification"] = verification_json(T, c, opts, sw, overall);
        if (!overall) out.exit_code = 3;
      }
    }
  } catch (const Error& e) {
    out.report["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
    out.exit_code = exit_code_for(e.code());
  }
  if (opts.timings) out.report["timings_ms"] = sw.laps();
  return out;
}

struct Golden {
  size_t card;
  size_t rank;
  int intersection_rank;
  const char* case_tag;
};

}  // namespace

std::vector<InstanceConfig> example_configs() {
  json ex1 = {{"name", "Example (i)"}, {"field", {{"poly", {1, 0, 1}}}}, {"S", {{{"p", 2}, {"select", "all"}}}}};
  json ex2 = {{"name", "Example (ii)"}, {"field", {{"poly", {1, 0, 1}}}}, {"S", {{{"p", 5}, {"select", "all"}}}}};
  return {parse_config(ex1), parse_config(ex2)};
}

RunResult run(Command cmd, const InstanceConfig& config, const RunOptions& opts) {
  if (cmd != Command::Examples) return run_instance(cmd, config, opts);
  const Golden golden[] = {{2, 1, 1, "2"}, {3, 2, 1, "1"}};
  RunResult out;
  out.report = {{"schema", 1}, {"command", "examples"}};
  json items = json::array();
  auto configs = example_configs();
  for (size_t i = 0; i < configs.size(); ++i) {
    auto r = run_instance(Command::Analyze, configs[i], opts);
    const Golden& g = golden[i];
    json expected = {{"card", g.card}, {"rank", g.rank}, {"intersection_rank", g.intersection_rank}, {"case", g.case_tag}};
    bool match = false;
    if (!r.report.contains("error")) {
      const auto& a = r.report["analysis"];
      match = a["S"]["card"] == g.card && a["s_units"]["rank"] == g.rank &&
              a["rank_table"][0]["intersection_rank"] == g.intersection_rank && a["case"] == g.case_tag;
    }
    items.push_back({{"name", configs[i].echo["name"]}, {"report", r.report}, {"expected", expected}, {"match", match}});
    if (r.exit_code != 0) {
      out.exit_code = std::max(out.exit_code, r.exit_code);
    } else if (!match) {
      out.exit_code = 3;
    }
  }
  out.report["examples"] = items;
  return out;
}

}  // namespace sgen2
