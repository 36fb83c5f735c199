//! Command-line surface, tiling document serialization, and SVG rendering.

mod cli;
mod document;
mod svg;

pub use cli::{run_cli, EXIT_OK, EXIT_USAGE, EXIT_VERDICT};
pub use document::{
    read_tiling, write_tiling, DocumentError, DocumentMeta, TilingDocument, SCHEMA_MAJOR,
    SCHEMA_VERSION,
};
pub use svg::{disk_arc_endpoints, render_svg, RenderModel};
