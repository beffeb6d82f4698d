#include "plim/hofbauer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "json.hpp"
#include "plim/error.hpp"
#include "plim/graph.hpp"

namespace plim {

std::vector<Letter> make_alphabet(const PLMap& f) {
    CriticalData cd = critical_data(f);
    std::vector<Letter> out;
    for (size_t i = 0; i + 1 < cd.points.size(); ++i) {
        Letter L;
        L.index = static_cast<int>(i);
        L.interval = RationalInterval::open(cd.points[i], cd.points[i + 1]);
        L.direction = eval(f, cd.points[i + 1]) > eval(f, cd.points[i]) ? +1 : -1;
        out.push_back(L);
    }
    return out;
}

RationalInterval follower_set(const PLMap& f, const Word& word) {
    std::vector<Letter> alpha = make_alphabet(f);
    if (word.empty()) return RationalInterval::closed(0, 1);
    for (int a : word)
        if (a < 0 || a >= static_cast<int>(alpha.size()))
            throw DomainError("follower_set: invalid letter index");
    RationalInterval G = alpha[word[0]].interval;
    for (size_t k = 1; k < word.size(); ++k) {
        G = image_interval(f, G).intersect(alpha[word[k]].interval);
        if (G.empty_set()) return RationalInterval::empty();
    }
    return G;
}

ConstraintWord min_word(const PLMap& f, const Word& word) {
    if (word.empty()) throw DomainError("min_word: empty word");
    RationalInterval full = follower_set(f, word);
    if (full.empty_set()) throw DomainError("min_word: forbidden word");
    for (size_t k = 1; k <= word.size(); ++k) {
        Word suffix(word.end() - k, word.end());
        RationalInterval fol = follower_set(f, suffix);
        if (fol == full) return {suffix, fol};
    }
    return {word, full};  // unreachable: k = word.size() matches
}

Diagram build_diagram(const PLMap& f, int word_cap, int vertex_cap) {
    if (word_cap < 1 || vertex_cap < 1) throw DomainError("build_diagram: caps must be >= 1");
    Diagram d;
    d.alphabet = make_alphabet(f);
    int nletters = static_cast<int>(d.alphabet.size());

    // per-vertex follower sets of every suffix (sufF[k] = follower of the
    // last k+1 letters); reused to compute min() in one sweep
    std::vector<std::vector<RationalInterval>> suffixes;
    std::map<Word, int> index;
    std::deque<int> queue;

    auto add_vertex = [&](const Word& w, const RationalInterval& fol,
                          std::vector<RationalInterval> suf) {
        int id = static_cast<int>(d.vertices.size());
        d.vertices.push_back({w, fol});
        d.arrows.emplace_back();
        suffixes.push_back(std::move(suf));
        index[w] = id;
        queue.push_back(id);
        return id;
    };

    for (int a = 0; a < nletters; ++a) {
        Word w{a};
        int id = add_vertex(w, d.alphabet[a].interval, {d.alphabet[a].interval});
        d.root_letters.push_back(id);
    }

    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        RationalInterval img = image_interval(f, d.vertices[v].follower);
        for (int a = 0; a < nletters; ++a) {
            RationalInterval ext = img.intersect(d.alphabet[a].interval);
            if (ext.empty_set()) continue;  // forbidden extension

            // min(alpha A): walk suffixes from the shortest; the chain of
            // candidate followers is exactly the new vertex's suffix list
            std::vector<RationalInterval> chain;
            chain.push_back(d.alphabet[a].interval);
            size_t j = 0;  // suffix length of alpha used
            while (!(chain.back() == ext)) {
                const RationalInterval& srcfol = suffixes[v][j];
                chain.push_back(image_interval(f, srcfol).intersect(d.alphabet[a].interval));
                ++j;
            }
            Word w(d.vertices[v].letters.end() - j, d.vertices[v].letters.end());
            w.push_back(a);

            auto it = index.find(w);
            int target;
            if (it != index.end()) {
                target = it->second;
            } else {
                if (static_cast<int>(w.size()) > word_cap) {
                    d.truncation = Diagram::Truncation::WordCap;
                    continue;
                }
                if (static_cast<int>(d.vertices.size()) >= vertex_cap) {
                    d.truncation = Diagram::Truncation::VertexCap;
                    continue;
                }
                target = add_vertex(w, ext, chain);
            }
            d.arrows[v].push_back({a, target});
        }
    }
    return d;
}

SCCResult scc_decomposition(const Diagram& d) {
    std::vector<std::vector<int>> adj(d.vertices.size());
    for (size_t v = 0; v < d.arrows.size(); ++v)
        for (auto& [a, t] : d.arrows[v]) adj[v].push_back(t);
    SCCResult r;
    r.components = strongly_connected_components(adj);
    for (size_t c = 0; c < r.components.size(); ++c) {
        auto& comp = r.components[c];
        if (comp.size() > 1) {
            r.irreducible.push_back(static_cast<int>(c));
            continue;
        }
        int v = comp[0];
        for (auto& [a, t] : d.arrows[v])
            if (t == v) {
                r.irreducible.push_back(static_cast<int>(c));
                break;
            }
    }
    return r;
}

std::vector<BigInt> loop_count(const Diagram& d, int vertex, int n_max) {
    if (vertex < 0 || vertex >= static_cast<int>(d.vertices.size()))
        throw DomainError("loop_count: vertex out of range");
    size_t n = d.vertices.size();
    std::vector<BigInt> w(n, 0), next(n);
    w[vertex] = 1;
    std::vector<BigInt> out;
    for (int step = 1; step <= n_max; ++step) {
        std::fill(next.begin(), next.end(), BigInt(0));
        for (size_t v = 0; v < n; ++v) {
            if (w[v] == 0) continue;
            for (auto& [a, t] : d.arrows[v]) next[t] += w[v];
        }
        std::swap(w, next);
        out.push_back(w[vertex]);
    }
    return out;
}

double loop_growth_rate(const std::vector<BigInt>& counts) {
    int n = static_cast<int>(counts.size());
    if (n < 2) throw DomainError("loop_growth_rate: need at least two counts");
    int half = n / 2;
    if (counts[half - 1] == 0 || counts[n - 1] == 0)
        throw DomainError("loop_growth_rate: zero loop count in window");
    double a = std::log(counts[n - 1].convert_to<double>());
    double b = std::log(counts[half - 1].convert_to<double>());
    return (a - b) / (n - half);
}

RecurrenceDiagnostic positive_recurrence_ratio(const Diagram& d, int vertex, double lambda,
                                               int n_max) {
    if (lambda <= 1) throw DomainError("positive_recurrence_ratio: lambda must exceed 1");
    std::vector<BigInt> counts = loop_count(d, vertex, n_max);
    RecurrenceDiagnostic r;
    double pw = 1;
    for (int i = 0; i < n_max; ++i) {
        pw *= lambda;
        r.ratios.push_back(counts[i].convert_to<double>() / pw);
    }
    double mn = -1;
    for (int i = n_max / 2; i < n_max; ++i)
        if (mn < 0 || r.ratios[i] < mn) mn = r.ratios[i];
    r.min_trailing = std::max(mn, 0.0);
    r.bounded_away = mn > 0;
    return r;
}

// {x in G : f(x) in J} for the monotone branch f|G; endpoint flags by
// exact membership
static RationalInterval branch_preimage(const PLMap& f, const RationalInterval& G,
                                        const RationalInterval& J) {
    RationalInterval img = image_interval(f, G);
    RationalInterval T = img.intersect(J);
    if (T.empty_set()) return RationalInterval::empty();
    auto solve = [&](const Rational& v) -> Rational {
        for (int i = 0; i < f.segment_count(); ++i) {
            const Dot& a = f.dots[i];
            const Dot& b = f.dots[i + 1];
            if (b.x < G.lo || a.x > G.hi) continue;
            Rational lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
            if (v < lo || v > hi) continue;
            Rational x = a.x + (v - a.y) * (b.x - a.x) / (b.y - a.y);
            if (x >= G.lo && x <= G.hi) return x;
        }
        throw Error("branch_preimage: value not attained on branch");
    };
    Rational xa = solve(T.lo), xb = solve(T.hi);
    if (xa > xb) std::swap(xa, xb);
    bool lo_in = G.contains(xa) && J.contains(eval(f, xa));
    bool hi_in = G.contains(xb) && J.contains(eval(f, xb));
    return {xa, xb, !lo_in, !hi_in};
}

LoopCertificate loop_certificate(const PLMap& f, const Diagram& d,
                                 const std::vector<int>& loop) {
    if (loop.size() < 2 || loop.front() != loop.back())
        throw DomainError("loop_certificate: need a closed path v0..vn with v0 == vn");
    int n = static_cast<int>(loop.size()) - 1;
    for (int i = 0; i < n; ++i) {
        bool arrow = false;
        for (auto& [a, t] : d.arrows[loop[i]])
            if (t == loop[i + 1]) arrow = true;
        if (!arrow) throw DomainError("loop_certificate: not a path in the diagram");
    }
    RationalInterval J = d.vertices[loop[n]].follower;
    for (int i = n - 1; i >= 0; --i) {
        J = branch_preimage(f, d.vertices[loop[i]].follower, J);
        if (J.empty_set()) throw Error("loop_certificate: chain collapsed");
    }
    // verify: forward images stay in the followers and land exactly on fol(v0)
    RationalInterval K = J;
    for (int i = 0; i < n; ++i) {
        if (!K.subset_of(d.vertices[loop[i]].follower))
            throw Error("loop_certificate: verification failed (containment)");
        K = image_interval(f, K);
    }
    if (!(K == d.vertices[loop[0]].follower))
        throw Error("loop_certificate: verification failed (image mismatch)");
    return {loop, J};
}

std::string diagram_to_dot(const Diagram& d) {
    std::ostringstream os;
    os << "digraph markov {\n";
    auto word_str = [&](const Word& w) {
        std::string s;
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) s += '.';
            s += std::to_string(w[i]);
        }
        return s;
    };
    for (size_t v = 0; v < d.vertices.size(); ++v)
        os << "  v" << v << " [label=\"" << word_str(d.vertices[v].letters) << "\\n"
           << d.vertices[v].follower.str() << "\"];\n";
    for (size_t v = 0; v < d.vertices.size(); ++v)
        for (auto& [a, t] : d.arrows[v])
            os << "  v" << v << " -> v" << t << " [label=\"" << a << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string diagram_to_json(const Diagram& d) {
    nlohmann::json j;
    j["truncation"] = d.truncation == Diagram::Truncation::Exact
                          ? "exact"
                          : (d.truncation == Diagram::Truncation::WordCap ? "word_cap"
                                                                          : "vertex_cap");
    nlohmann::json alph = nlohmann::json::array();
    for (auto& L : d.alphabet)
        alph.push_back({{"index", L.index},
                        {"lo", rational_to_string(L.interval.lo)},
                        {"hi", rational_to_string(L.interval.hi)},
                        {"direction", L.direction}});
    j["alphabet"] = alph;
    nlohmann::json verts = nlohmann::json::array();
    for (auto& v : d.vertices) {
        nlohmann::json e;
        e["word"] = v.letters;
        e["follower_lo"] = rational_to_string(v.follower.lo);
        e["follower_hi"] = rational_to_string(v.follower.hi);
        verts.push_back(e);
    }
    j["vertices"] = verts;
    nlohmann::json arrows = nlohmann::json::array();
    for (size_t v = 0; v < d.arrows.size(); ++v)
        for (auto& [a, t] : d.arrows[v])
            arrows.push_back({{"from", v}, {"letter", a}, {"to", t}});
    j["arrows"] = arrows;
    j["root_letters"] = d.root_letters;
    return j.dump(2);
}

}  // namespace plim
