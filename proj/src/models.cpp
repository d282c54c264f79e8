/*
   Copyright 2026 rs-repair contributors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "rsrepair/models.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "rsrepair/gf.hpp"

namespace rsrepair::models {

namespace {

long long ipow_ll(long long b, long long e) {
    long long r = 1;
    for (long long i = 0; i < e; ++i) r *= b;
    return r;
}

bool is_prime_ll(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// log10 of the product a*s*q_1*...*q_m where q_i is the i-th prime with
// s | (q_i - 1); used only for approximate-ell rows.
double log10_prime_product_ell(long long a, long long s, long long m) {
    double lg = std::log10((double)a) + std::log10((double)s);
    long long found = 0;
    for (long long p = s + 1; found < m && p < (long long)1e9; p += s) {
        if (is_prime_ll(p)) {
            lg += std::log10((double)p);
            ++found;
        }
    }
    return lg;
}

long long floor_log(long long q, long long x) {
    // largest s with q^s <= x (s >= 0); -1 if x < 1
    if (x < 1) return -1;
    long long s = 0, v = 1;
    while (v <= x / q) { v *= q; ++s; }
    return s;
}

bool n_at_most_q_pow(long long q, long long ell, long long n) {
    if (ell >= 63) return true;
    long long v = 1;
    for (long long i = 0; i < ell; ++i) {
        v *= q;
        if (v >= n) return true;
    }
    return v >= n;
}

SchemePoint base_point(const std::string& scheme, long long n, long long k,
                       long long e, long long d, long long q, long long ell,
                       long long a, long long s) {
    SchemePoint p;
    p.scheme = scheme;
    p.n = n; p.k = k; p.e = e; p.d = d; p.q = q;
    p.ell = ell;
    if (ell > 0) p.log10_ell = std::log10((double)ell);
    p.a = a; p.s = s;
    return p;
}

SchemePoint infeasible(SchemePoint p, const std::string& why) {
    p.feasible = false;
    p.notes = why;
    return p;
}

SchemePoint with_bw(SchemePoint p, Rat gq, bool upper) {
    p.feasible = true;
    p.upper_bound = upper;
    p.gq_symbols = gq;
    p.normalized = gq / Rat(p.d * p.ell);
    if (upper && p.notes.empty()) p.notes = "upper bound";
    return p;
}

}  // namespace

Rat msr_bound(long long n, long long k, long long e, long long d, long long ell) {
    if (e < 1 || e > n - k)
        throw Error(Error::Code::BadParameter, "require 1 <= e <= n-k");
    if (d < k || d > n - e)
        throw Error(Error::Code::BadParameter, "require k <= d <= n-e");
    return Rat(e * ell * d, d - k + e);
}

long long naive_repair_gq(long long k, long long ell) { return k * ell; }

SchemePoint table_row(const std::string& scheme, long long n, long long k,
                      long long e, long long d, long long q, long long ell,
                      long long a, long long s) {
    if (d < 0) d = n - e;
    long long r = n - k;
    SchemePoint p = base_point(scheme, n, k, e, d, q, ell, a, s);

    if (scheme == "msr") {
        return with_bw(p, msr_bound(n, k, e, d, ell), false);
    }

    if (scheme == "full_length") {
        long long smax = floor_log(q, r);
        p.s = smax;
        if (!n_at_most_q_pow(q, ell, n)) return infeasible(p, "n > q^ell");
        return with_bw(p, Rat((n - 1) * (ell - smax)), false);
    }

    if (scheme == "ye_barg_orig") {
        // ell = r^n exactly; b < (ell/r)(n+1)
        if (r < 2) return infeasible(p, "requires r >= 2");
        double lg = n * std::log10((double)r);
        if (lg > 17) {
            p.ell = -1;
            p.ell_approx = true;
            p.log10_ell = lg;
            p.feasible = true;
            p.upper_bound = true;
            p.normalized = Rat(n + 1, r * d);
            p.notes = "approx ell = r^n";
            return p;
        }
        p.ell = ipow_ll(r, n);
        p.log10_ell = lg;
        return with_bw(p, Rat(p.ell, r) * Rat(n + 1), true);
    }

    if (scheme == "tamo_orig") {
        long long sval = d - k + 1;
        p.s = sval;
        p.ell = -1;
        p.ell_approx = true;
        p.log10_ell = log10_prime_product_ell(1, sval, n);
        p.feasible = true;
        p.normalized = Rat(1, sval);   // b = d ell / (d-k+1)
        p.notes = "approx ell";
        return p;
    }

    if (scheme == "one_coset") {
        if (a < 1 || ell % a != 0) return infeasible(p, "a does not divide ell");
        if (n > ipow_ll(q, a) - 1) return infeasible(p, "n > q^a - 1");
        if (s < 0 || s > a - 1) return infeasible(p, "require 0 <= s <= a-1");
        if (ipow_ll(q, s) > r) return infeasible(p, "q^s > n-k");
        Rat b((ell / a) * (n - 1) * (a - s));
        return with_bw(p, b, s != a - 1);
    }

    if (scheme == "two_cosets") {
        if (a < 1 || ell % a != 0) return infeasible(p, "a does not divide ell");
        if (n % 2) return infeasible(p, "n must be even");
        if (n > 2 * (ipow_ll(q, a) - 1)) return infeasible(p, "n > 2(q^a - 1)");
        if (ell / a > r) return infeasible(p, "ell/a > n-k");
        Rat b((n - 1) * (ell + a) - (ell - a), 2);
        return with_bw(p, b, false);
    }

    if (scheme == "multi_coset_1") {
        if (a < 1 || ell % a != 0) return infeasible(p, "a does not divide ell");
        long long quot = ell / a, m = 0;
        // ell/a = r^m
        if (r < 2) return infeasible(p, "requires r >= 2");
        while (quot > 1 && quot % r == 0) { quot /= r; ++m; }
        if (quot != 1 || m < 1) return infeasible(p, "ell/a is not a power of r");
        if (n > (ipow_ll(q, a) - 1) * m)
            return infeasible(p, "n > (q^a-1) log_r(ell/a)");
        Rat b = Rat(ell, r) * Rat(n + 1 + (r - 1) * (ipow_ll(q, a) - 2));
        return with_bw(p, b, true);
    }

    if (scheme == "multi_coset_2") {
        if (a < 1) return infeasible(p, "a must be positive");
        long long sval = d - k + 1;
        long long qa = ipow_ll(q, a);
        long long m = (n + qa - 2) / (qa - 1);   // ceil(n / (q^a - 1))
        p.s = sval;
        p.ell = -1;
        p.ell_approx = true;
        p.log10_ell = log10_prime_product_ell(a, sval, m);
        p.feasible = true;
        p.upper_bound = false;
        // b = d ell/(d-k+1) + (d/(n-1)) (ell/(d-k+1)) (d-k) (q^a - 2)
        p.normalized = (Rat(1) + Rat((d - k) * (qa - 2), n - 1)) / Rat(sval);
        p.notes = "approx ell";
        return p;
    }

    if (scheme == "mardia1") {
        if (!n_at_most_q_pow(q, ell, n)) return infeasible(p, "n > q^ell");
        if (ell - 1 > floor_log(q, r)) return infeasible(p, "q^(ell-1) > n-k");
        if ((double)e >= std::sqrt((double)floor_log(q, n)))
            return infeasible(p, "e >= sqrt(log_q n)");
        Rat b((n - e) * e - e * (e - 1) * (q - 1) / 2);
        return with_bw(p, b, true);
    }

    if (scheme == "mardia2") {
        if (!n_at_most_q_pow(q, ell, n)) return infeasible(p, "n > q^ell");
        Rat best(0);
        bool have = false;
        for (long long ep = e; ep <= r; ++ep) {
            long long inner = (n - k + ep - 1) / (2 * ep - 1);
            long long lg = floor_log(q, inner);
            if (lg < 0) continue;
            Rat b((n - ep) * (ell - lg));
            if (!have || b < best) { best = b; have = true; }
        }
        if (!have) return infeasible(p, "no admissible e'");
        return with_bw(p, best, true);
    }

    if (scheme == "ye_multi") {
        long long sval = d - k + e;
        p.ell = -1;
        p.ell_approx = true;
        p.log10_ell = n * std::log10((double)n);
        p.feasible = true;
        p.normalized = Rat(e, sval);
        p.notes = "approx ell";
        return p;
    }

    if (scheme == "one_coset_multi") {
        if (a < 1 || ell % a != 0) return infeasible(p, "a does not divide ell");
        if (n > ipow_ll(q, a) - 1) return infeasible(p, "n > q^a - 1");
        if (s < 0 || s > a - 1) return infeasible(p, "require 0 <= s <= a-1");
        if (ipow_ll(q, s) > r) return infeasible(p, "q^s > n-k");
        if (s == a - 1) {
            if (2 * a <= e * (e - 1)) return infeasible(p, "a <= e(e-1)/2");
        } else if (2 * a < e * (e - 1) * (a - s) * (a - s)) {
            return infeasible(p, "a < e(e-1)/2 (a-s)^2");
        }
        Rat b = Rat(e * ell, a) * Rat((n - e) * (a - s));
        return with_bw(p, b, true);
    }

    if (scheme == "multi_coset_multi") {
        if (a < 1) return infeasible(p, "a must be positive");
        long long qa = ipow_ll(q, a);
        long long m = (n + qa - 2) / (qa - 1);
        long long sval = 1;
        for (long long i = 2; i <= r; ++i) sval *= i;   // (n-k)!
        p.ell = -1;
        p.ell_approx = true;
        p.log10_ell = log10_prime_product_ell(a, sval, m);
        p.feasible = true;
        p.upper_bound = true;
        // Eq. with h1 = e: b <= (d/(n-e)) (e ell/(d-k+e)) (n-e+(d-k)(q^a-2))
        p.normalized =
            Rat(e, (n - e) * (d - k + e)) * Rat(n - e + (d - k) * (qa - 2));
        p.notes = "approx ell";
        return p;
    }

    throw Error(Error::Code::BadParameter, "unknown scheme name: " + scheme);
}

std::vector<SchemePoint> sweep(long long n, long long k, long long e,
                               long long q, long long ell_lo, long long ell_hi,
                               long long d) {
    if (ell_lo > ell_hi) return {};
    if (d < 0) d = n - e;
    std::vector<SchemePoint> out;

    auto push_family = [&](long long ell, const std::string& family,
                           auto&& gen) {
        size_t before = out.size();
        gen();
        bool any_feasible = false;
        for (size_t i = before; i < out.size(); ++i)
            if (out[i].feasible) any_feasible = true;
        if (!any_feasible) {
            // keep one flagged row per family and ell
            SchemePoint flag;
            bool have_flag = false;
            for (size_t i = before; i < out.size(); ++i)
                if (!have_flag) { flag = out[i]; have_flag = true; }
            out.resize(before);
            if (have_flag) {
                out.push_back(flag);
            } else {
                SchemePoint p = base_point(family, n, k, e, d, q, ell, -1, -1);
                out.push_back(infeasible(p, "no feasible parameters"));
            }
        }
    };

    for (long long ell = ell_lo; ell <= ell_hi; ++ell) {
        if (e == 1) {
            out.push_back(table_row("full_length", n, k, e, d, q, ell, -1, -1));
            push_family(ell, "one_coset", [&] {
                for (long long a = 1; a <= ell; ++a) {
                    if (ell % a) continue;
                    long long s = std::min(a - 1, floor_log(q, n - k));
                    out.push_back(table_row("one_coset", n, k, e, d, q, ell, a, s));
                }
            });
            push_family(ell, "two_cosets", [&] {
                for (long long a = 1; a <= ell; ++a) {
                    if (ell % a) continue;
                    out.push_back(table_row("two_cosets", n, k, e, d, q, ell, a, -1));
                }
            });
            push_family(ell, "multi_coset_1", [&] {
                for (long long a = 1; a <= ell; ++a) {
                    if (ell % a) continue;
                    out.push_back(table_row("multi_coset_1", n, k, e, d, q, ell, a, -1));
                }
            });
            out.push_back(table_row("msr", n, k, e, d, q, ell, -1, -1));
        } else {
            out.push_back(table_row("mardia1", n, k, e, d, q, ell, -1, -1));
            out.push_back(table_row("mardia2", n, k, e, d, q, ell, -1, -1));
            push_family(ell, "one_coset_multi", [&] {
                for (long long a = 1; a <= ell; ++a) {
                    if (ell % a) continue;
                    for (long long s = 0; s <= a - 1; ++s)
                        out.push_back(
                            table_row("one_coset_multi", n, k, e, d, q, ell, a, s));
                }
            });
            out.push_back(table_row("msr", n, k, e, d, q, ell, -1, -1));
        }
    }
    // approximate-ell product constructions choose their own ell
    long long amax = 1;
    while (ipow_ll(q, amax) - 1 < n && amax < 20) ++amax;
    for (long long a = 1; a <= amax; ++a) {
        if (e == 1)
            out.push_back(table_row("multi_coset_2", n, k, e, d, q, -1, a, -1));
        else
            out.push_back(table_row("multi_coset_multi", n, k, e, d, q, -1, a, -1));
    }
    if (e == 1) out.push_back(table_row("ye_barg_orig", n, k, e, d, q, -1, -1, -1));
    return out;
}

namespace {

std::string rat_to_6sig(const Rat& r) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g",
                  (double)r.numerator() / (double)r.denominator());
    return buf;
}

std::string ell_to_string(const SchemePoint& p) {
    if (!p.ell_approx) return std::to_string(p.ell);
    double frac = p.log10_ell - std::floor(p.log10_ell);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "~%.2fe%+d", std::pow(10.0, frac),
                  (int)std::floor(p.log10_ell));
    return buf;
}

}  // namespace

std::string sweep_to_csv(const std::vector<SchemePoint>& points) {
    std::ostringstream os;
    os << "scheme,n,k,e,d,q,ell,a,s,bits,normalized,feasible,notes\n";
    for (const auto& p : points) {
        os << p.scheme << ',' << p.n << ',' << p.k << ',' << p.e << ',' << p.d
           << ',' << p.q << ',' << ell_to_string(p) << ','
           << (p.a >= 0 ? std::to_string(p.a) : "") << ','
           << (p.s >= 0 ? std::to_string(p.s) : "") << ',';
        if (p.gq_symbols) {
            Rat bits = *p.gq_symbols;   // bits only differ for q != 2
            double v = (double)bits.numerator() / (double)bits.denominator() *
                       std::log2((double)p.q);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.6g", v);
            os << buf;
        }
        os << ',';
        if (p.normalized) os << rat_to_6sig(*p.normalized);
        os << ',' << (p.feasible ? 1 : 0) << ',' << p.notes << "\n";
    }
    return os.str();
}

std::string sweep_to_json(const std::vector<SchemePoint>& points) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : points) {
        nlohmann::json row;
        row["scheme"] = p.scheme;
        row["n"] = p.n;
        row["k"] = p.k;
        row["e"] = p.e;
        row["d"] = p.d;
        row["q"] = p.q;
        row["ell"] = ell_to_string(p);
        if (p.a >= 0) row["a"] = p.a;
        if (p.s >= 0) row["s"] = p.s;
        if (p.gq_symbols)
            row["bits"] = (double)p.gq_symbols->numerator() /
                          (double)p.gq_symbols->denominator() *
                          std::log2((double)p.q);
        if (p.normalized)
            row["normalized"] = (double)p.normalized->numerator() /
                                (double)p.normalized->denominator();
        row["feasible"] = p.feasible;
        row["notes"] = p.notes;
        arr.push_back(row);
    }
    return arr.dump(2) + "\n";
}

}  // namespace rsrepair::models
