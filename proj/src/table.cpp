#include "racah/table.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace racah {

Tier tier_from_string(const std::string& s) {
  if (s == "core") return Tier::Core;
  if (s == "extended") return Tier::Extended;
  if (s == "heavy") return Tier::Heavy;
  throw DomainError("unknown tier: " + s);
}

std::string tier_name(Tier t) {
  switch (t) {
    case Tier::Core: return "core";
    case Tier::Extended: return "extended";
    default: return "heavy";
  }
}

namespace {

// materialization budget for the eigenvalue route per tier: the heavy tier
// opens the configured cap, the lighter ones stay interactive
double omega_budget(Tier tier, const Caps& caps) {
  switch (tier) {
    case Tier::Core:
    case Tier::Extended: return 1.5e6;
    default: return static_cast<double>(caps.omega_entry_cap);
  }
}

double perm_budget(Tier tier, const Caps& caps) {
  switch (tier) {
    case Tier::Core: return 2.0e10;
    case Tier::Extended: return 5.0e10;
    default: return caps.perm_flop_cap;
  }
}

}  // namespace

GdiTable compute_gdi_table(InvariantWorkspace& ws, Tier tier) {
  const int n = ws.n();
  const int r = ws.adjoint_dim();
  GdiTable table;
  table.n = n;
  table.rows.assign(n - 1, std::vector<CellResult>(n - 1));

  std::vector<Representation> fund;
  for (int s = 1; s <= n - 1; ++s)
    fund.push_back(fund_rep(ws.basis(), s, ws.config().caps));

  for (int m = 2; m <= n; ++m) {
    const bool eig_ok =
        static_cast<double>(binomial(r, 2 * m - 1)) <=
        omega_budget(tier, ws.config().caps);
    std::optional<ProbeTuple> probe;  // shared across the row
    auto row_probe = [&]() -> const ProbeTuple& {
      if (!probe) {
        probe = pick_probe_tuple(ws, m);
        if (!probe)
          throw DomainError("table: no probe tuple at m=" +
                            std::to_string(m));
      }
      return *probe;
    };
    for (int s = 1; s <= n - 1; ++s) {
      CellResult& cell = table.at(m, s);
      cell.m = m;
      cell.s = s;
      const Representation& rep = fund[s - 1];
      try {
        PermTraceOptions popt;
        popt.flop_cap = perm_budget(tier, ws.config().caps);
        if (m <= 4 && eig_ok) {
          cell.report = gdi_from_eigenvalue(ws, m, rep);
          // cross-route agreement where the permutation sum is cheap
          if (antisym_trace_cost(2 * m - 1, rep.dim) <= popt.flop_cap) {
            IndexReport other = gdi_from_component(ws, m, rep, row_probe(), popt);
            cell.report.residual_cross =
                std::abs(cell.report.gdi_value - other.gdi_value);
          }
        } else {
          if (antisym_trace_cost(2 * m - 1, rep.dim) > popt.flop_cap)
            throw CapExceeded("table cell over permutation budget");
          cell.report = gdi_from_component(ws, m, rep, row_probe(), popt);
        }
      } catch (const CapExceeded&) {
        cell.feasible = false;
        continue;
      }
      // closed-form cross-checks (K6-K9 families; L1 handles the mirror)
      auto cf = closed_form::gdi_fund(n, m, s);
      if (!cf && s == n - 1) {
        if (auto base = closed_form::gdi_fund(n, m, 1))
          cf = (m % 2 == 0) ? *base : -*base;
      }
      if (!cf && s == n - 2 && n - 2 >= 1) {
        if (auto base = closed_form::gdi_fund2(n, m))
          cf = (m % 2 == 0) ? *base : -*base;
      }
      if (cf) {
        const double lbl = *cf;
        cell.closed_form_ok =
            std::abs(cell.report.gdi_value - lbl) <
            ws.config().eps_int * std::max(1.0, std::abs(lbl));
        cell.closed_form_note = cell.closed_form_ok ? "cf ok" : "cf MISMATCH";
      } else {
        cell.closed_form_note = "no closed form";
      }
    }
  }
  return table;
}

double conjugation_invariant_residual(const GdiTable& t) {
  double worst = 0.0;
  const int n = t.n;
  for (int m = 2; m <= n; ++m) {
    for (int s = 1; s <= n - 1; ++s) {
      const auto& a = t.at(m, s);
      const auto& b = t.at(m, n - s);
      if (!a.feasible || !b.feasible) continue;
      const double expect =
          (m % 2 == 0) ? b.report.gdi_value : -b.report.gdi_value;
      worst = std::max(worst, std::abs(a.report.gdi_value - expect));
    }
  }
  return worst;
}

std::string render_table_markdown(const GdiTable& t) {
  std::ostringstream os;
  os << "| su(" << t.n << ") |";
  for (int s = 1; s <= t.n - 1; ++s) os << " s=" << s << " |";
  os << "\n|---|";
  for (int s = 1; s <= t.n - 1; ++s) os << "---|";
  os << "\n";
  for (int m = 2; m <= t.n; ++m) {
    os << "| m=" << m << " |";
    for (int s = 1; s <= t.n - 1; ++s) {
      const auto& c = t.at(m, s);
      if (!c.feasible)
        os << " needs --heavy |";
      else
        os << " " << c.report.gdi_rounded << " |";
    }
    os << "\n";
  }
  return os.str();
}

std::string render_table_csv(const GdiTable& t) {
  std::ostringstream os;
  os << "m";
  for (int s = 1; s <= t.n - 1; ++s) os << ",s=" << s;
  os << "\n";
  for (int m = 2; m <= t.n; ++m) {
    os << m;
    for (int s = 1; s <= t.n - 1; ++s) {
      const auto& c = t.at(m, s);
      os << ",";
      if (!c.feasible)
        os << "needs --heavy";
      else
        os << c.report.gdi_rounded;
    }
    os << "\n";
  }
  return os.str();
}

namespace {

nlohmann::json report_json(const IndexReport& r) {
  return nlohmann::json{{"n", r.n},
                        {"m", r.m},
                        {"rep", r.rep},
                        {"c_value", r.c_value},
                        {"gdi_value", r.gdi_value},
                        {"gdi_rounded", r.gdi_rounded},
                        {"route", r.route},
                        {"residual_int", r.residual_int},
                        {"residual_cross", r.residual_cross},
                        {"residual_imag", r.residual_imag},
                        {"absent", r.absent}};
}

IndexReport report_from_json(const nlohmann::json& j) {
  IndexReport r;
  r.n = j.at("n").get<int>();
  r.m = j.at("m").get<int>();
  r.rep = j.at("rep").get<std::string>();
  r.c_value = j.at("c_value").get<double>();
  r.gdi_value = j.at("gdi_value").get<double>();
  r.gdi_rounded = j.at("gdi_rounded").get<long long>();
  r.route = j.at("route").get<std::string>();
  r.residual_int = j.at("residual_int").get<double>();
  r.residual_cross = j.at("residual_cross").get<double>();
  r.residual_imag = j.at("residual_imag").get<double>();
  r.absent = j.at("absent").get<bool>();
  return r;
}

}  // namespace

std::string render_table_json(const GdiTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (int m = 2; m <= t.n; ++m) {
    nlohmann::json row = nlohmann::json::array();
    for (int s = 1; s <= t.n - 1; ++s) {
      const auto& c = t.at(m, s);
      nlohmann::json cell;
      cell["m"] = m;
      cell["s"] = s;
      cell["feasible"] = c.feasible;
      if (c.feasible) {
        cell["value"] = c.report.gdi_rounded;
        cell["report"] = report_json(c.report);
        cell["closed_form"] = c.closed_form_note;
        cell["closed_form_ok"] = c.closed_form_ok;
      }
      row.push_back(cell);
    }
    rows.push_back(row);
  }
  nlohmann::json out;
  out["n"] = t.n;
  out["rows"] = rows;
  out["conjugation_residual"] = conjugation_invariant_residual(t);
  return out.dump(2);
}

std::string index_report_to_json(const IndexReport& r) {
  return report_json(r).dump(2);
}

IndexReport index_report_from_json(const std::string& text) {
  return report_from_json(nlohmann::json::parse(text));
}

}  // namespace racah
