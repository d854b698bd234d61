use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at v = {point}")]
    Pole { point: String },
    #[error("negative argument {value} for q-{kind}")]
    NegativeArgument { kind: &'static str, value: i64 },
    #[error("invalid root datum {label}{rank}")]
    InvalidType { label: char, rank: usize },
    #[error("node {node} out of range 1..={rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("unknown case {0}")]
    UnknownCase(String),
    #[error("syntax error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("completion of the {block} block for {datum} exceeded degree cap {cap} at overlap {overlap}")]
    DegreeCapExceeded {
        datum: String,
        block: char,
        cap: usize,
        overlap: String,
    },
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("no image for generator {0}")]
    UndefinedImage(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
