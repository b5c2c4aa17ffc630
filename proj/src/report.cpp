namespace ellfib {}
