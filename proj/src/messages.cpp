#include "stocklab/messages.hpp"

#include "stocklab/csv.hpp"
#include "stocklab/errors.hpp"

namespace stocklab {

std::vector<RawMessage> parse_messages_csv(std::istream& in) {
    std::vector<std::string> fields;
    if (!csv::read_record(in, fields))
        throw ValidationError("empty input: missing message header row");
    const std::vector<std::string> expect = {"Symbol", "Message", "Datetime", "User",
                                             "Message_Id"};
    if (fields != expect)
        throw ValidationError("message CSV header must be Symbol,Message,Datetime,User,Message_Id");
    std::vector<RawMessage> out;
    size_t row = 1;
    while (csv::read_record(in, fields)) {
        ++row;
        if (fields.size() == 1 && fields[0].empty()) continue;
        if (fields.size() != 5)
            throw ValidationError("row " + std::to_string(row) + ": expected 5 fields, got " +
                                  std::to_string(fields.size()));
        out.push_back({fields[0], fields[1], fields[2], fields[3], fields[4]});
    }
    return out;
}

void serialize_messages_csv(const std::vector<RawMessage>& messages, std::ostream& out) {
    out << "Symbol,Message,Datetime,User,Message_Id\n";
    for (const auto& m : messages)
        out << csv::join({m.symbol, m.message, m.datetime, m.user, m.message_id}) << '\n';
}

}  // namespace stocklab
