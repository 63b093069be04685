//! Library half of the `drt-moments` command: PGM I/O and the command
//! implementations, so they can be exercised without spawning a process.

pub mod app;
pub mod pgm;

pub use app::run;
pub use pgm::{parse_pgm, read_pgm, write_pgm, PgmError, PgmHeader, PgmMagic};
