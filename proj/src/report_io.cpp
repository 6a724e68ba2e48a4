#include "uniadd/report_io.hpp"

#include <cstdio>
#include <sstream>

namespace uniadd::io {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

std::string verdict_str(Verdict v) { return quoted(to_string(v)); }

// Minimal ordered-object builder.
class Obj {
  public:
    Obj& raw(const std::string& key, const std::string& value) {
        if (!first_) body_ += ',';
        first_ = false;
        body_ += quoted(key) + ":" + value;
        return *this;
    }
    Obj& str(const std::string& key, const std::string& value) {
        return raw(key, quoted(value));
    }
    Obj& num(const std::string& key, std::uint64_t value) {
        return raw(key, std::to_string(value));
    }
    Obj& snum(const std::string& key, std::int64_t value) {
        return raw(key, std::to_string(value));
    }
    Obj& real(const std::string& key, double value) {
        return raw(key, fmt_double(value));
    }
    Obj& boolean(const std::string& key, bool value) {
        return raw(key, bool_str(value));
    }
    std::string done() const { return "{" + body_ + "}"; }

  private:
    std::string body_;
    bool first_ = true;
};

template <typename T, typename Fn>
std::string arr(const std::vector<T>& items, Fn fn) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ',';
        out += fn(items[i]);
    }
    out += ']';
    return out;
}

std::string report_obj(const ClassificationReport& r) {
    Obj o;
    o.num("q", r.q);
    o.str("method", r.method);
    o.raw("in_sf", verdict_str(r.in_sf));
    o.str("case", r.case_label);
    o.raw("odd_primes", arr(r.odd_primes, [](const OddPrimeVerdict& v) {
              return Obj().num("p", v.prime).boolean("A_holds", v.A_holds).done();
          }));
    if (r.A2) o.boolean("A2", *r.A2);
    if (r.A4) o.boolean("A4", *r.A4);
    if (r.B2) o.raw("B2", verdict_str(*r.B2));
    if (r.method == "prop21") {
        o.boolean("applicable", r.applicable);
        o.raw("triggered", arr(r.triggered, [](const std::string& s) { return quoted(s); }));
        if (r.iii_bullet) o.boolean("iii_bullet", *r.iii_bullet);
        if (r.iii_proof) o.boolean("iii_proof", *r.iii_proof);
        if (r.iii_bullet) o.boolean("iii_disagreement", r.iii_disagreement);
    }
    return o.done();
}

}  // namespace

std::string poly_json(const Polynomial& F) {
    std::string out = "[";
    for (std::size_t i = 0; i < F.coeffs().size(); ++i) {
        if (i) out += ',';
        out += quoted(F.coeffs()[i].get_str());
    }
    out += ']';
    return out;
}

std::string classification_json(const Polynomial& F, const ClassificationReport& delange,
                                const ClassificationReport& prop21) {
    return Obj()
               .raw("poly", poly_json(F))
               .num("q", delange.q)
               .raw("delange", report_obj(delange))
               .raw("prop21", report_obj(prop21))
               .done() +
           "\n";
}

std::string sf_scan_csv(const std::vector<ScanRow>& rows) {
    std::string out = "q,delange,prop21,prop21_applicable,discrepancy\n";
    for (const auto& r : rows) {
        out += std::to_string(r.q);
        out += ',';
        out += to_string(r.delange);
        out += ',';
        out += to_string(r.prop21);
        out += ',';
        out += r.prop21_applicable ? '1' : '0';
        out += ',';
        out += r.discrepancy ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string sf_scan_json(const std::vector<ScanRow>& rows) {
    return arr(rows, [](const ScanRow& r) {
               return Obj()
                   .num("q", r.q)
                   .raw("delange", verdict_str(r.delange))
                   .raw("prop21", verdict_str(r.prop21))
                   .boolean("prop21_applicable", r.prop21_applicable)
                   .boolean("discrepancy", r.discrepancy)
                   .done();
           }) +
           "\n";
}

std::string expsum_json(const Polynomial& F, const ExpSumReport& r) {
    Obj o;
    o.raw("poly", poly_json(F));
    o.num("ell", r.ell);
    o.num("k", static_cast<std::uint64_t>(r.k));
    o.snum("r", r.r);
    o.raw("value", "[" + fmt_double(r.value.real()) + "," + fmt_double(r.value.imag()) + "]");
    o.real("magnitude", r.magnitude);
    o.raw("cochrane", r.cochrane ? fmt_double(*r.cochrane) : "null");
    o.raw("loh", r.loh ? fmt_double(*r.loh) : "null");
    o.real("corollary", r.corollary);
    o.str("applicable_lemma", r.applicable_lemma);
    o.num("t", static_cast<std::uint64_t>(r.t));
    o.num("tau", static_cast<std::uint64_t>(r.tau));
    o.num("R", static_cast<std::uint64_t>(r.roots));
    o.num("s", static_cast<std::uint64_t>(r.s));
    o.num("d_s", static_cast<std::uint64_t>(r.d_s));
    return o.done() + "\n";
}

std::string expsum_scan_csv(const ExpSumScan& scan) {
    std::string out = "ell,k,r,magnitude,cochrane,loh,corollary,violation\n";
    for (const auto& row : scan.rows) {
        out += std::to_string(row.ell);
        out += ',';
        out += std::to_string(row.k);
        out += ',';
        out += std::to_string(row.r);
        out += ',';
        out += fmt_double(row.magnitude);
        out += ',';
        if (row.cochrane) out += fmt_double(*row.cochrane);
        out += ',';
        if (row.loh) out += fmt_double(*row.loh);
        out += ',';
        out += fmt_double(row.corollary);
        out += ',';
        out += row.violation ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string expsum_scan_json(const ExpSumScan& scan) {
    Obj o;
    o.num("rows", scan.rows.size());
    o.num("violations", scan.violations);
    o.real("max_corollary_ratio", scan.max_corollary_ratio);
    return o.done() + "\n";
}

std::string vset_json(const Polynomial& F, const VSetReport& r) {
    Obj o;
    o.raw("poly", poly_json(F));
    o.num("q", r.q);
    o.num("J", r.J);
    o.num("M", r.M);
    o.raw("exact", arr(r.exact, [](const mpz_class& v) { return quoted(v.get_str()); }));
    o.raw("asymptotic", arr(r.asymptotic, [](double v) { return fmt_double(v); }));
    if (r.charsum)
        o.raw("charsum", arr(*r.charsum, [](double v) { return fmt_double(v); }));
    else
        o.raw("charsum", "null");
    {
        std::string ind = "[";
        for (std::size_t i = 0; i < r.indicator.size(); ++i) {
            if (i) ind += ',';
            ind += bool_str(r.indicator[i]);
        }
        ind += ']';
        o.raw("indicator", ind);
    }
    o.real("max_relative_error", r.max_relative_error);
    if (!r.spectra.empty()) {
        o.raw("spectra", arr(r.spectra, [](const LocalSpectrum& s) {
                  Obj so;
                  so.num("ell", s.ell);
                  so.num("e", static_cast<std::uint64_t>(s.e));
                  so.num("D", static_cast<std::uint64_t>(s.D));
                  so.num("E", static_cast<std::uint64_t>(s.E));
                  auto ints = [](const std::vector<int>& v) {
                      std::string out = "[";
                      for (std::size_t i = 0; i < v.size(); ++i) {
                          if (i) out += ',';
                          out += std::to_string(v[i]);
                      }
                      return out + "]";
                  };
                  so.raw("X", ints(s.X));
                  so.raw("Y", ints(s.Y));
                  so.raw("Z", ints(s.Z));
                  std::string bs = "[";
                  bool first = true;
                  for (const auto& [k, b] : s.B) {
                      if (!first) bs += ',';
                      first = false;
                      bs += Obj()
                                .num("k", static_cast<std::uint64_t>(k))
                                .real("B", b)
                                .done();
                  }
                  bs += ']';
                  so.raw("B", bs);
                  return so.done();
              }));
    }
    if (r.eta) {
        o.raw("eta", Obj()
                         .real("eta", r.eta->eta)
                         .num("ell0", r.eta->ell0)
                         .real("max_quantity", r.eta->max_quantity)
                         .done());
    }
    if (r.xi) o.num("xi", *r.xi);
    return o.done() + "\n";
}

std::string histogram_csv(const UniformityReport& rep) {
    std::string out = "class,count\n";
    for (std::size_t a = 0; a < rep.histogram.size(); ++a) {
        out += std::to_string(a);
        out += ',';
        out += std::to_string(rep.histogram[a]);
        out += '\n';
    }
    return out;
}

std::string distribution_json(const UniformityReport& rep) {
    Obj o;
    o.num("q", rep.q);
    o.num("x", rep.x);
    o.real("max_rel_dev", rep.metrics.max_rel_dev);
    o.real("total_variation", rep.metrics.total_variation);
    o.real("chi_square", rep.metrics.chi_square);
    o.raw("histogram",
          arr(rep.histogram, [](std::uint64_t c) { return std::to_string(c); }));
    return o.done() + "\n";
}

std::string convenient_params_json(const ConvenientParams& p, double inconvenient) {
    Obj o;
    o.num("x", p.x);
    o.real("epsilon", p.epsilon);
    o.num("J", static_cast<std::uint64_t>(p.J));
    o.boolean("J_overridden", p.j_overridden);
    o.real("y", p.y);
    o.real("inconvenient_fraction", inconvenient);
    return o.done() + "\n";
}

std::string decomposition_json(const Decomposition& d) {
    Obj o;
    o.num("n", d.n);
    o.boolean("convenient", d.convenient);
    if (d.convenient) {
        o.num("m", d.m);
        o.raw("large_primes",
              arr(d.large_primes, [](std::uint64_t p) { return std::to_string(p); }));
        o.real("L_m", d.L_m);
    }
    return o.done() + "\n";
}

std::string conditional_json(const ConvenientParams& p, const ConditionalTable& t,
                             std::uint64_t q) {
    Obj o;
    o.num("q", q);
    o.num("x", p.x);
    o.num("J", static_cast<std::uint64_t>(p.J));
    o.real("y", p.y);
    o.num("convenient_total", t.convenient_total);
    o.num("inconvenient_total", t.inconvenient_total);
    auto counts = [](const std::vector<std::uint64_t>& v) {
        return arr(v, [](std::uint64_t c) { return std::to_string(c); });
    };
    o.raw("all", counts(t.all));
    o.raw("convenient", counts(t.convenient));
    o.raw("inconvenient", counts(t.inconvenient));
    return o.done() + "\n";
}

std::string overrep_json(const OverrepResult& r, int d, std::uint64_t q1, std::uint64_t x) {
    Obj o;
    o.num("d", static_cast<std::uint64_t>(d));
    o.num("q1", q1);
    o.num("q", r.q);
    o.num("x", x);
    o.num("count", r.count);
    o.real("expected", r.expected);
    o.real("ratio", r.ratio);
    return o.done() + "\n";
}

}  // namespace uniadd::io
