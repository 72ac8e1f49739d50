#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cosco/oracle.hpp"

namespace cosco {

ScenarioTable::ScenarioTable(std::vector<double> probs, std::vector<Vec> scenarios)
    : probs_(std::move(probs)), scenarios_(std::move(scenarios)) {
    if (probs_.empty() || probs_.size() != scenarios_.size())
        throw std::invalid_argument("ScenarioTable: empty or mismatched rows");
    const std::size_t d = scenarios_[0].size();
    if (d == 0) throw std::invalid_argument("ScenarioTable: scenarios must be nonempty");
    double sum = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (probs_[i] < 0.0) throw std::invalid_argument("ScenarioTable: negative probability");
        if (scenarios_[i].size() != d)
            throw std::invalid_argument("ScenarioTable: inconsistent scenario dimension");
        sum += probs_[i];
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("ScenarioTable: probabilities sum to " +
                                    std::to_string(sum) + ", expected 1 within 1e-9");
    cum_.resize(probs_.size());
    double c = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        probs_[i] /= sum;  // renormalize away the <=1e-9 drift
        c += probs_[i];
        cum_[i] = c;
    }
    cum_.back() = 1.0;
}

ScenarioTable ScenarioTable::parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("ScenarioTable: empty input, header row required");
    std::vector<double> probs;
    std::vector<Vec> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        // strip comments and whitespace-only lines
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        std::string cell;
        Vec values;
        while (std::getline(row, cell, ',')) {
            try {
                values.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw std::invalid_argument("ScenarioTable: bad number '" + cell +
                                            "' on line " + std::to_string(lineno));
            }
        }
        if (values.size() < 2)
            throw std::invalid_argument("ScenarioTable: line " + std::to_string(lineno) +
                                        " needs probability plus components");
        probs.push_back(values[0]);
        rows.emplace_back(values.begin() + 1, values.end());
    }
    return ScenarioTable(std::move(probs), std::move(rows));
}

ScenarioTable ScenarioTable::load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ScenarioTable: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_csv(buf.str());
}

std::size_t ScenarioTable::draw(RngStream& rng) const {
    const double u = rng.next_double();
    for (std::size_t i = 0; i < cum_.size(); ++i)
        if (u < cum_[i]) return i;
    return cum_.size() - 1;
}

Vec ScenarioTable::mean() const {
    Vec m(dim(), 0.0);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) m[j] += probs_[i] * scenarios_[i][j];
    return m;
}

}  // namespace cosco
