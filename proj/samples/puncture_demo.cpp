// Punctures the bundled [[5,2,2]]_3 code at its first qudit with each pair and
// prints the parameters of the result, then the pairs that keep d = 2.

#include "qpunct/qpunct.hpp"

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    const std::string path = argc > 1 ? argv[1] : "data/qutrit_5_2_2.code";
    const qpunct::StabilizerCode c = qpunct::read_code_file(path).code;
    const auto words = qpunct::min_weight_words(c, {}, 1000);
    std::cout << "[[" << c.n() << "," << c.k() << "," << words.d << "]]_" << c.field().p() << '\n';

    for (auto pair : qpunct::ProjPair::all(c.field())) {
        const auto out = qpunct::puncture_detailed(c, 0, pair);
        std::cout << "(" << pair.alpha() << "|" << pair.beta() << ") -> [[" << out.code.n() << "," << out.code.k()
                  << "," << qpunct::min_distance(out.code).d << "]]  " << qpunct::to_string(out.kind) << '\n';
    }

    std::cout << "pairs guaranteed to keep the distance at index 1:";
    for (const auto& a : qpunct::find_avoidance(c, words))
        if (a.index == 0) std::cout << " (" << a.pair.alpha() << "|" << a.pair.beta() << ")";
    std::cout << '\n';
}
