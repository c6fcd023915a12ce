"""Cross-cutting building blocks: error taxonomy and structured logging."""
