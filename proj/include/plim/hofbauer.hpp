#pragma once

#include <string>
#include <vector>

#include "plim/interval.hpp"
#include "plim/plmap.hpp"

namespace plim {

// A letter is a maximal open lap of f.
struct Letter {
    int index = 0;
    RationalInterval interval;  // open
    int direction = +1;
};

using Word = std::vector<int>;  // letter indices, leftmost first (A_{-m}..A_0)

struct ConstraintWord {
    Word letters;
    RationalInterval follower;
};

// Complete Markov diagram: vertices are constraint words, arrows
// alpha -> min(alpha A). Exact when the BFS closed before hitting a cap.
struct Diagram {
    enum class Truncation { Exact, WordCap, VertexCap };

    std::vector<Letter> alphabet;
    std::vector<ConstraintWord> vertices;
    // arrows[v] = (letter, target vertex)
    std::vector<std::vector<std::pair<int, int>>> arrows;
    std::vector<int> root_letters;  // vertex ids of the single-letter words
    Truncation truncation = Truncation::Exact;

    bool exact() const { return truncation == Truncation::Exact; }
    int arrow_count() const {
        int n = 0;
        for (auto& a : arrows) n += static_cast<int>(a.size());
        return n;
    }
};

std::vector<Letter> make_alphabet(const PLMap& f);

// f^m(A_{-m} cap f^-1(A_{-m+1}) cap ... cap f^-m(A_0)), exact; empty means
// the word is forbidden. The empty word's follower is [0,1] by convention.
RationalInterval follower_set(const PLMap& f, const Word& word);

// shortest suffix with the same follower set
ConstraintWord min_word(const PLMap& f, const Word& word);

Diagram build_diagram(const PLMap& f, int word_cap = 32, int vertex_cap = 20000);

struct SCCResult {
    std::vector<std::vector<int>> components;
    std::vector<int> irreducible;  // components carrying a subshift
};
SCCResult scc_decomposition(const Diagram& d);

// number of length-n loops at `vertex` (closed walks), big-integer exact
std::vector<BigInt> loop_count(const Diagram& d, int vertex, int n_max);

// windowed growth-rate estimator log(l_n / l_{n/2}) / (n - n/2); the raw
// (1/n) log l_n quotient carries an O(1/n) bias (3^{n-1} vs 3^n already
// misses log 3 by log3/n)
double loop_growth_rate(const std::vector<BigInt>& counts);

struct RecurrenceDiagnostic {
    std::vector<double> ratios;  // l_n lambda^{-n}
    double min_trailing = 0;
    bool bounded_away = false;
};
RecurrenceDiagnostic positive_recurrence_ratio(const Diagram& d, int vertex, double lambda,
                                               int n_max);

// Subinterval of fol(loop.front()) mapped homeomorphically onto it by f^n,
// from the branch-restricted preimage chain; construction is verified
// exactly and certificates of distinct loops are disjoint.
struct LoopCertificate {
    std::vector<int> loop;  // closed path v0 ... vn with v0 == vn
    RationalInterval interval;
};
LoopCertificate loop_certificate(const PLMap& f, const Diagram& d,
                                 const std::vector<int>& loop);

std::string diagram_to_dot(const Diagram& d);
std::string diagram_to_json(const Diagram& d);

}  // namespace plim
