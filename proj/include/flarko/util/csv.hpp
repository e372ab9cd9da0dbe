#pragma once

#include <istream>
#include <string>
#include <vector>

namespace flarko {

// RFC-4180 CSV reader: quoted fields, doubled-quote escapes, CRLF or LF
// record separators, newlines inside quoted fields. The first record is
// the header. Unquoted fields are trimmed of surrounding ASCII whitespace.
class CsvReader {
public:
    explicit CsvReader(std::istream& in);

    const std::vector<std::string>& header() const { return header_; }

    // Column index for a header name, -1 if absent.
    int column(const std::string& name) const;

    // Reads the next record into row. Returns false at end of input.
    bool next(std::vector<std::string>& row);

    // 1-based index of the last record returned by next() (header excluded).
    std::size_t record_number() const { return record_number_; }

private:
    bool read_record(std::vector<std::string>& row);

    std::istream& in_;
    std::vector<std::string> header_;
    std::size_t record_number_ = 0;
};

}  // namespace flarko
