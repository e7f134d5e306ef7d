// Writes the frozen fixture documents. Run manually with the output
// directory as the only argument; a unit test regenerates the documents and
// compares them byte-for-byte against the committed files.

#include <fstream>
#include <iostream>
#include <vector>

#include "support.hpp"

using namespace argsector;

namespace {

void write(const std::string& dir, const std::string& name, const std::string& content) {
    std::ofstream out(dir + "/" + name, std::ios::binary);
    out << content << "\n";
    std::cout << name << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures <output-dir>\n";
        return 2;
    }
    std::string dir = argv[1];

    auto ensemble = testsupport::fixture_ensemble();
    const int degrees[] = {4, 8, 12, 20};
    for (int d = 0; d < 4; ++d) {
        for (int i = 0; i < 3; ++i) {
            FunctionSpecDocument doc;
            doc.spec = ensemble[std::size_t(d) * 3 + i];
            doc.declaredOrder = 0.0;
            write(dir,
                  "ensemble_d" + std::to_string(degrees[d]) + "_" + std::to_string(i) + ".json",
                  serialize_function_spec(doc));
        }
    }

    {
        FunctionSpecDocument doc;
        doc.spec = MonomialSpec{3};
        write(dir, "mono3.json", serialize_function_spec(doc));
    }
    {
        FunctionSpecDocument doc;
        doc.spec = FryntovSpec{10.0, 0.5, 2};
        doc.declaredOrder = 0.5;
        write(dir, "fryntov_small.json", serialize_function_spec(doc));
    }
    {
        CanonicalProductSpec s;
        for (int k = 1; k <= 4; ++k)
            s.rings.push_back({std::pow(10.0, k),
                               static_cast<long long>(std::floor(std::pow(10.0, 0.5 * k)))});
        FunctionSpecDocument doc;
        doc.spec = s;
        doc.declaredOrder = 0.0;
        write(dir, "canonical_10k.json", serialize_function_spec(doc));
    }
    return 0;
}
