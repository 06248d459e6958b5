//! Holds the `acceptance` test target; see `cliffsys::selftest` for the criteria.
