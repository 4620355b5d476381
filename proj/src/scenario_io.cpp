#include "carbongrid/scenario_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "carbongrid/errors.hpp"

namespace carbongrid {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            field.push_back(c);
        }
    }
    fields.push_back(field);
    return fields;
}

} // namespace

LoadScenarios read_loads_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open loads file: " + path.string());
    }
    std::string line;
    int line_no = 0;
    LoadScenarios out;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) {
            continue;
        }
        const auto fields = split_csv_line(line);
        if (out.bus_ids.empty()) {
            for (const std::string& field : fields) {
                char* end = nullptr;
                const long id = std::strtol(field.c_str(), &end, 10);
                if (end != field.c_str() + field.size() || field.empty()) {
                    throw ParseError("header field '" + field + "' is not a bus number", line_no);
                }
                out.bus_ids.push_back(static_cast<int>(id));
            }
            continue;
        }
        if (fields.size() != out.bus_ids.size()) {
            throw ParseError("scenario row has " + std::to_string(fields.size()) +
                                 " fields, expected " + std::to_string(out.bus_ids.size()),
                             line_no);
        }
        std::vector<double> row;
        for (const std::string& field : fields) {
            char* end = nullptr;
            const double value = std::strtod(field.c_str(), &end);
            if (field.empty() || end != field.c_str() + field.size()) {
                throw ParseError("non-numeric load value '" + field + "'", line_no);
            }
            row.push_back(value);
        }
        rows.push_back(std::move(row));
    }
    if (out.bus_ids.empty()) {
        throw ParseError("loads file has no header row");
    }
    out.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(out.bus_ids.size()));
    for (size_t r = 0; r < rows.size(); ++r) {
        for (size_t c = 0; c < rows[r].size(); ++c) {
            out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return out;
}

void write_loads_csv(const std::filesystem::path& path, const LoadScenarios& scenarios) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write loads file: " + path.string());
    }
    for (size_t i = 0; i < scenarios.bus_ids.size(); ++i) {
        out << (i ? "," : "") << scenarios.bus_ids[i];
    }
    out << "\n";
    out.precision(17);
    for (Eigen::Index r = 0; r < scenarios.values.rows(); ++r) {
        for (Eigen::Index c = 0; c < scenarios.values.cols(); ++c) {
            out << (c ? "," : "") << scenarios.values(r, c);
        }
        out << "\n";
    }
}

Eigen::MatrixXd align_scenarios(const LoadScenarios& scenarios,
                                const std::vector<int>& target_bus_ids,
                                const Eigen::VectorXd& nominal) {
    if (static_cast<Eigen::Index>(target_bus_ids.size()) != nominal.size()) {
        throw ContractError("nominal load does not match the target bus list");
    }
    std::vector<int> column_of(scenarios.bus_ids.size());
    for (size_t c = 0; c < scenarios.bus_ids.size(); ++c) {
        const auto it =
            std::find(target_bus_ids.begin(), target_bus_ids.end(), scenarios.bus_ids[c]);
        if (it == target_bus_ids.end()) {
            throw ParseError("loads file references bus " + std::to_string(scenarios.bus_ids[c]) +
                             ", which carries no load in this case");
        }
        column_of[c] = static_cast<int>(it - target_bus_ids.begin());
    }
    Eigen::MatrixXd aligned(scenarios.values.rows(), nominal.size());
    for (Eigen::Index r = 0; r < aligned.rows(); ++r) {
        aligned.row(r) = nominal.transpose();
        for (size_t c = 0; c < scenarios.bus_ids.size(); ++c) {
            aligned(r, column_of[c]) = scenarios.values(r, static_cast<Eigen::Index>(c));
        }
    }
    return aligned;
}

} // namespace carbongrid
