# Largest base set the lattice tables are built for.
MAX_BASE_SET_SIZE = 7

# The interval memo cache size cap, 0 means unbounded.
DEFAULT_INTERVAL_CACHE_SIZE: int = 0

# Largest interval the oracle enumerates before raising a capability error.
DEFAULT_ORACLE_ENUMERATION_LIMIT: int = 10_000_000

# Largest candidate product the oracle system solver searches.
DEFAULT_ORACLE_SEARCH_LIMIT: int = 50_000_000
