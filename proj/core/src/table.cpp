#include "cepstra/table.hpp"
#include "cepstra/csv.hpp"
#include "cepstra/errors.hpp"

#include <fstream>
#include <unordered_map>
#include <unordered_set>

namespace cepstra {

std::size_t FeatureTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw DataError("missing column: " + name);
}

bool FeatureTable::has_column(const std::string& name) const {
    for (const auto& c : columns)
        if (c == name) return true;
    return false;
}

const std::vector<double>& FeatureTable::column(const std::string& name) const {
    return values[column_index(name)];
}

void FeatureTable::add_column(const std::string& name, std::vector<double> vals) {
    if (has_column(name)) throw DataError("duplicate column: " + name);
    if (vals.size() != n_rows()) throw ContractError("add_column: row count mismatch");
    columns.push_back(name);
    values.push_back(std::move(vals));
}

FeatureTable FeatureTable::select_columns(const std::vector<std::string>& names) const {
    FeatureTable out;
    out.ids = ids;
    out.has_labels = has_labels;
    out.labels = labels;
    for (const auto& n : names) {
        out.columns.push_back(n);
        out.values.push_back(values[column_index(n)]);
    }
    return out;
}

FeatureTable FeatureTable::select_rows(const std::vector<std::size_t>& row_indices) const {
    FeatureTable out;
    out.has_labels = has_labels;
    out.columns = columns;
    out.values.assign(columns.size(), {});
    for (std::size_t r : row_indices) {
        if (r >= n_rows()) throw ContractError("select_rows: row index out of range");
        out.ids.push_back(ids[r]);
        if (has_labels) out.labels.push_back(labels[r]);
        for (std::size_t c = 0; c < columns.size(); ++c)
            out.values[c].push_back(values[c][r]);
    }
    return out;
}

std::vector<std::size_t> FeatureTable::rows_of(const std::vector<std::string>& want_ids) const {
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t r = 0; r < ids.size(); ++r) index.emplace(ids[r], r);

    std::vector<std::size_t> out;
    std::string missing;
    for (const auto& id : want_ids) {
        const auto it = index.find(id);
        if (it == index.end()) {
            if (!missing.empty()) missing += ", ";
            missing += id;
        } else {
            out.push_back(it->second);
        }
    }
    if (!missing.empty()) throw DataError("ids not present in table: " + missing);
    return out;
}

void write_table(const FeatureTable& t, const std::string& path,
                 const std::vector<std::string>& comments) {
    if (t.has_labels && t.labels.size() != t.ids.size())
        throw ContractError("write_table: label count mismatch");
    for (const auto& col : t.values)
        if (col.size() != t.ids.size())
            throw ContractError("write_table: ragged columns");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write csv file: " + path);

    for (const auto& c : comments) out << "# " << c << "\n";
    out << "image_id";
    if (t.has_labels) out << ",label";
    for (const auto& c : t.columns) out << "," << csv_quote(c);
    out << "\n";

    for (std::size_t r = 0; r < t.n_rows(); ++r) {
        out << csv_quote(t.ids[r]);
        if (t.has_labels) out << "," << t.labels[r];
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            out << "," << format_double(t.values[c][r]);
        out << "\n";
    }
    if (!out) throw DataError("write failed: " + path);
}

FeatureTable read_table(const std::string& path) {
    const auto rows = read_csv_rows(path);
    if (rows.empty()) throw DataError("empty csv file: " + path);

    const auto& header = rows[0];
    if (header.empty() || header[0] != "image_id")
        throw DataError("first column must be image_id: " + path);

    FeatureTable t;
    std::size_t first_value_col = 1;
    if (header.size() > 1 && header[1] == "label") {
        t.has_labels = true;
        first_value_col = 2;
    }
    std::unordered_set<std::string> seen;
    for (std::size_t c = first_value_col; c < header.size(); ++c) {
        if (!seen.insert(header[c]).second)
            throw DataError("duplicate header '" + header[c] + "' in " + path);
        t.columns.push_back(header[c]);
    }
    t.values.assign(t.columns.size(), {});

    std::unordered_set<std::string> seen_ids;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size())
            throw DataError("ragged row " + std::to_string(r + 1) + " in " + path + ": expected " +
                            std::to_string(header.size()) + " cells, got " +
                            std::to_string(row.size()));
        if (!seen_ids.insert(row[0]).second)
            throw DataError("duplicate image_id '" + row[0] + "' in " + path + " row " +
                            std::to_string(r + 1));
        t.ids.push_back(row[0]);
        if (t.has_labels) {
            const double lab =
                parse_double(row[1], path + " row " + std::to_string(r + 1) + " col 2");
            if (lab != 0.0 && lab != 1.0)
                throw DataError("label must be 0 or 1 in " + path + " row " +
                                std::to_string(r + 1));
            t.labels.push_back(static_cast<int>(lab));
        }
        for (std::size_t c = first_value_col; c < row.size(); ++c)
            t.values[c - first_value_col].push_back(parse_double(
                row[c], path + " row " + std::to_string(r + 1) + " col " + std::to_string(c + 1)));
    }
    return t;
}

FeatureTable merge_tables(const FeatureTable& base, const FeatureTable& other) {
    const auto other_rows = other.rows_of(base.ids); // throws listing missing ids
    FeatureTable merged = base;
    for (std::size_t c = 0; c < other.columns.size(); ++c) {
        std::vector<double> col;
        col.reserve(base.n_rows());
        for (std::size_t r : other_rows) col.push_back(other.values[c][r]);
        merged.add_column(other.columns[c], std::move(col));
    }
    return merged;
}

std::vector<ManifestRow> read_manifest(const std::string& path) {
    const auto rows = read_csv_rows(path);
    if (rows.empty()) throw DataError("empty manifest: " + path);

    const std::vector<std::string> expected = {"image_id", "image_path", "mask_path", "label",
                                               "lesion_id"};
    if (rows[0] != std::vector<std::string>(expected.begin(), expected.end()))
        throw DataError("manifest header must be image_id,image_path,mask_path,label,lesion_id: " +
                        path);

    std::vector<ManifestRow> out;
    std::unordered_set<std::string> seen_ids;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != 5)
            throw DataError("ragged manifest row " + std::to_string(r + 1) + " in " + path);
        ManifestRow m;
        m.image_id = row[0];
        m.image_path = row[1];
        m.mask_path = row[2];
        if (!row[3].empty()) {
            const double lab = parse_double(row[3], path + " row " + std::to_string(r + 1));
            if (lab != 0.0 && lab != 1.0)
                throw DataError("label must be 0 or 1 at manifest row " + std::to_string(r + 1));
            m.label = static_cast<int>(lab);
        }
        m.lesion_id = row[4];
        if (m.image_id.empty() || m.lesion_id.empty())
            throw DataError("empty image_id or lesion_id at manifest row " + std::to_string(r + 1));
        if (!seen_ids.insert(m.image_id).second)
            throw DataError("duplicate image_id '" + m.image_id + "' in manifest " + path);
        out.push_back(std::move(m));
    }
    return out;
}

void write_manifest(const std::vector<ManifestRow>& rows, const std::string& path,
                    const std::vector<std::string>& comments) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write manifest: " + path);
    for (const auto& c : comments) out << "# " << c << "\n";
    out << "image_id,image_path,mask_path,label,lesion_id\n";
    for (const auto& m : rows) {
        out << csv_quote(m.image_id) << "," << csv_quote(m.image_path) << ","
            << csv_quote(m.mask_path) << ",";
        if (m.label >= 0) out << m.label;
        out << "," << csv_quote(m.lesion_id) << "\n";
    }
    if (!out) throw DataError("write failed: " + path);
}

} // namespace cepstra
