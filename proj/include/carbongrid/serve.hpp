#pragma once

#include <memory>
#include <string>

#include "carbongrid/mpp.hpp"

namespace carbongrid {

/// Read-only HTTP JSON endpoint over an immutable region table.
///
///   GET  /regions            -> table metadata
///   POST /lmce               -> {"loads": [...]} to region + lmce + lmp
///   POST /lmce/from-lmp      -> {"lmp": [...]} reverse lookup
///
/// Requests are stateless; concurrent queries share the table without
/// locking.
class RegionServer {
public:
    explicit RegionServer(RegionTable table);
    ~RegionServer();
    RegionServer(const RegionServer&) = delete;
    RegionServer& operator=(const RegionServer&) = delete;

    /// Binds to an ephemeral port on `host`; returns the port (-1 on error).
    int bind_any(const std::string& host);
    /// Blocking serve loop after bind_any.
    bool listen_after_bind();
    /// Bind to a fixed port and serve (blocking).
    bool listen(const std::string& host, int port);
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace carbongrid
