#pragma once
// Serialization: a deterministic JSON writer for reports (fixed key order,
// floats at 17 significant digits, so identical runs emit identical bytes)
// plus tolerant readers for pair files and trajectory files.
//
// Wire conventions: complex numbers are [re, im] arrays; matrices are
// {"n": int, "entries": [[[re,im], ...], ...]} row-major; a pair file is
// {"X": matrix, "Z": matrix}.

#include <string>
#include <vector>

#include "cmbethe/flow.hpp"
#include "cmbethe/identities.hpp"

namespace cmbethe {

std::string format_double(double v);  // %.17g

class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& name);
    JsonWriter& value(const std::string& s);
    JsonWriter& value(const char* s);
    JsonWriter& value(double v);
    JsonWriter& value(long long v);
    JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
    JsonWriter& value(bool b);
    JsonWriter& value(Complex z);  // [re, im]

    const std::string& str() const { return out_; }

  private:
    void separate();
    std::string out_;
    std::vector<char> has_items_;  // per open container
    bool pending_key_ = false;
};

void write_matrix(JsonWriter& w, const Matrix& m);
void write_pair(JsonWriter& w, const Matrix& x, const Matrix& z);
void write_report(JsonWriter& w, const ResidualReport& r);

std::string trajectory_to_csv(const Trajectory& t);
std::string trajectory_to_json(const Trajectory& t);

// Parsed with nlohmann/json; malformed input raises CmError with a diagnostic.
struct PairFile {
    Matrix x;
    Matrix z;
};
PairFile pair_from_json_text(const std::string& text);
std::string pair_to_json_text(const Matrix& x, const Matrix& z);

// Root levels of a stored trajectory (CSV `m,j,re,im` or the JSON mirror),
// as needed by the Bethe-equation audit.
struct RootTable {
    std::vector<long long> m_values;
    std::vector<std::vector<Complex>> roots;
};
RootTable root_table_from_csv(const std::string& text);
RootTable root_table_from_json(const std::string& text);

}  // namespace cmbethe
