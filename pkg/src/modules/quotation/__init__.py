"""Quotation module: quote, unquote and quoted substitution."""
