pub mod exactfield;
pub mod polyring;
pub mod quiverrep;
pub mod subcat;
pub mod encoder;
