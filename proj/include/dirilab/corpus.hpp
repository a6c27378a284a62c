#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dirilab/expseries.hpp"
#include "dirilab/series.hpp"

namespace dirilab {

struct CorpusEntry {
    std::string name;
    std::string formula;
    std::string note;
    std::function<ExpSeries()> make;
};

const std::vector<CorpusEntry>& corpus();
bool corpus_has(const std::string& name);
ExpSeries corpus_series(const std::string& name);

// exp(-(2 - w1 - w2)/(2 + w1 + w2)), w1 = 2^{-s}, w2 = 3^{-s}, truncated at total degree `degree`
GeneralizedSeries sec2_example(int degree = 24);

} // namespace dirilab
