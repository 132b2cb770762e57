# Lexical complexity toolkit
