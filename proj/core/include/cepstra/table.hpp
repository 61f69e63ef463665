#pragma once

#include <string>
#include <vector>

namespace cepstra {

/// Rectangular table of named numeric columns keyed by image id. The CSV
/// interchange object for features, rankings, and merged handcrafted sets.
/// Column-major storage; rows align across columns by index.
struct FeatureTable {
    std::vector<std::string> ids;                // per row
    bool has_labels = false;
    std::vector<int> labels;                     // 0/1 per row when has_labels
    std::vector<std::string> columns;            // column names
    std::vector<std::vector<double>> values;     // [column][row]

    std::size_t n_rows() const { return ids.size(); }
    std::size_t n_cols() const { return columns.size(); }

    /// Index of a named column; throws DataError naming the column if absent.
    std::size_t column_index(const std::string& name) const;
    bool has_column(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const;

    void add_column(const std::string& name, std::vector<double> vals);

    /// New table with only the named columns (ids and labels kept).
    FeatureTable select_columns(const std::vector<std::string>& names) const;

    /// New table with only the given row indices.
    FeatureTable select_rows(const std::vector<std::size_t>& row_indices) const;

    /// Row indices of the given ids; throws DataError listing missing ids.
    std::vector<std::size_t> rows_of(const std::vector<std::string>& want_ids) const;
};

/// Write as CSV: header `image_id,label,<columns...>` (label only when
/// present), doubles in shortest round-trip form. Leading '#' comment
/// lines carry run metadata and are skipped on read.
void write_table(const FeatureTable& t, const std::string& path,
                 const std::vector<std::string>& comments = {});

/// Parse a feature CSV. First column must be image_id; a second column
/// named label is read as the labels. Throws DataError with row/column
/// position on ragged rows, duplicate headers, or non-numeric cells.
FeatureTable read_table(const std::string& path);

/// Join other's columns onto base by image_id. Every base id must be
/// present in other; otherwise throws DataError listing the missing ids.
/// Duplicate column names are an error.
FeatureTable merge_tables(const FeatureTable& base, const FeatureTable& other);

/// One extraction work item.
struct ManifestRow {
    std::string image_id;
    std::string image_path;
    std::string mask_path;
    int label = -1; // -1 when absent
    std::string lesion_id;
};

/// Manifest CSV: image_id,image_path,mask_path,label,lesion_id.
std::vector<ManifestRow> read_manifest(const std::string& path);
void write_manifest(const std::vector<ManifestRow>& rows, const std::string& path,
                    const std::vector<std::string>& comments = {});

} // namespace cepstra
