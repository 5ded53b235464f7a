pub mod exact_linalg;
pub mod group;
pub mod sign_character;
pub mod simplicial;
pub mod lefschetz;
pub mod scene;
pub mod fixtures;
pub mod report;
